"""Operating-point solver and power-factor sweep."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .inverter_dq import (
    DqCurrents,
    GridParams,
    ModulationPair,
    dc_link_current,
    grid_currents,
    modulation_indices,
    powers,
    theta_from_pf,
)

CSV_COLUMNS = ("pf", "Mq", "Md", "Iq", "Id", "Ipeak", "Pg_dc", "Pg_ac")

#: Power factors swept for the lagging and leading tables.
LAGGING_PFS = (0.2, 0.4, 0.6, 0.8)
LEADING_PFS = (-0.2, -0.4, -0.6, -0.8)


class InsufficientPoints(ValueError):
    pass


class OperatingPoint(NamedTuple):
    pf: float
    P_target: float = 600.0


@dataclass(frozen=True)
class SteadyStateRow:
    """One solved operating point.

    ``pg_dc`` is the DC-side power ``Vdc * Io``; ``pg_ac`` the power delivered
    at the grid terminals. A failed point keeps ``pf`` and sets ``error``;
    the numeric fields are then NaN.
    """

    pf: float
    mq: float = math.nan
    md: float = math.nan
    iq: float = math.nan
    id: float = math.nan
    ipeak: float = math.nan
    pg_dc: float = math.nan
    pg_ac: float = math.nan
    q: float = math.nan
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def currents(self) -> DqCurrents:
        return DqCurrents(self.iq, self.id)

    @property
    def modulation(self) -> ModulationPair:
        return ModulationPair(self.mq, self.md)

    def as_tuple(self) -> tuple:
        return (self.pf, self.mq, self.md, self.iq, self.id, self.ipeak, self.pg_dc, self.pg_ac)


def solve_point(op: OperatingPoint, g: GridParams) -> SteadyStateRow:
    angle = theta_from_pf(op.pf)
    i = grid_currents(op.P_target, g, angle.theta, angle.leading)
    m = modulation_indices(i, g)
    p_ac, q = powers(i, g)
    return SteadyStateRow(
        pf=op.pf,
        mq=m.mq,
        md=m.md,
        iq=i.iq,
        id=i.id,
        ipeak=i.peak,
        pg_dc=g.Vdc * dc_link_current(m, i),
        pg_ac=p_ac,
        q=q,
    )


def pf_sweep(pfs: Sequence[float], P_target: float, g: GridParams) -> list[SteadyStateRow]:
    """Solve each power factor in order; failures become error rows."""
    rows = []
    for pf in pfs:
        try:
            rows.append(solve_point(OperatingPoint(pf, P_target), g))
        except (ValueError, ArithmeticError) as exc:
            rows.append(SteadyStateRow(pf=pf, error=str(exc)))
    return rows


@dataclass(frozen=True)
class TrendSeries:
    mq_vs_md: tuple[np.ndarray, np.ndarray]
    ipeak_vs_pf: tuple[np.ndarray, np.ndarray]
    pg_vs_pf: tuple[np.ndarray, np.ndarray]
    r_squared: float
    slope: float
    intercept: float
    degenerate: bool


def trend_series(rows: Sequence[SteadyStateRow]) -> TrendSeries:
    """Series behind the Mq-vs-Md, Ipeak-vs-pF and Pg-vs-pF plots.

    ``r_squared`` is for the least-squares line Mq = slope*Md + intercept.
    When Md has no spread the fit is ``degenerate`` and ``r_squared`` is NaN.
    """
    rows = [r for r in rows if r.ok]
    if len(rows) < 2:
        raise InsufficientPoints("need at least two solved rows")
    pf = np.array([r.pf for r in rows])
    mq = np.array([r.mq for r in rows])
    md = np.array([r.md for r in rows])
    ipeak = np.array([r.ipeak for r in rows])
    pg = np.array([r.pg_dc for r in rows])

    spread = np.ptp(md)
    if spread <= 1e-12 * max(1.0, np.abs(md).max()):
        slope = intercept = r2 = math.nan
        degenerate = True
    else:
        slope, intercept = np.polyfit(md, mq, 1)
        resid = mq - (slope * md + intercept)
        ss_tot = float(np.sum((mq - mq.mean()) ** 2))
        r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
        degenerate = False
    return TrendSeries(
        mq_vs_md=(md, mq),
        ipeak_vs_pf=(pf, ipeak),
        pg_vs_pf=(pf, pg),
        r_squared=r2,
        slope=float(slope),
        intercept=float(intercept),
        degenerate=degenerate,
    )
