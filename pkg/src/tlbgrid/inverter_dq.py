"""Averaged three-phase grid-tied inverter in the synchronous qd frame.

The q-axis is aligned with the grid voltage so the d-axis grid voltage is
zero. Phase voltage commands are ``(Vdc/2) * m`` with ``m`` the averaged
modulation index, giving::

    L dIq/dt = (Vdc/2) Mq - r Iq - wL Id - Vqg
    L dId/dt = (Vdc/2) Md - r Id + wL Iq

Current signs: lagging power factor gives negative Id (the inverter absorbs
reactive power, Q > 0 by ``Q = -(3/2) Vqg Id``).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple


class InvalidPowerFactor(ValueError):
    pass


class NoRealRoot(ArithmeticError):
    """Target power exceeds what the line can carry."""


@dataclass(frozen=True)
class GridParams:
    r: float = 0.1
    L: float = 1.0e-3
    f: float = 60.0
    Vqg: float = 160.0
    Vdc: float = 400.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        for name in ("L", "f", "Vqg", "Vdc"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.f

    @property
    def xl(self) -> float:
        """Line reactance wL in ohms."""
        return self.omega * self.L


class DqCurrents(NamedTuple):
    iq: float
    id: float

    @property
    def peak(self) -> float:
        return math.hypot(self.iq, self.id)


class ModulationPair(NamedTuple):
    mq: float
    md: float

    @property
    def magnitude(self) -> float:
        return math.hypot(self.mq, self.md)


class PowerFactorAngle(NamedTuple):
    theta: float
    leading: bool


def theta_from_pf(pf: float) -> PowerFactorAngle:
    """Power-factor angle; negative ``pf`` marks a leading power factor."""
    if not (math.isfinite(pf) and 0.0 < abs(pf) <= 1.0):
        raise InvalidPowerFactor(f"power factor out of range: {pf}")
    return PowerFactorAngle(math.acos(abs(pf)), pf < 0)


def grid_currents(P_target: float, g: GridParams, theta: float, leading: bool = False) -> DqCurrents:
    """Size the dq currents so injected power covers delivery plus line loss.

    Solves ``1.5 Vqg Iq + 1.5 r Iq^2 (1 + tan^2 theta) = P_target`` for the
    positive root, then ``|Id| = Iq tan(theta)``.
    """
    if P_target <= 0:
        raise ValueError("P_target must be positive")
    tan_t = math.tan(theta)
    a = 1.5 * g.r * (1.0 + tan_t * tan_t)
    b = 1.5 * g.Vqg
    if a == 0.0:
        iq = P_target / b
    else:
        # b > 0 and a > 0 so a positive root always exists; guard overflow anyway
        disc = b * b + 4.0 * a * P_target
        if not math.isfinite(disc) or disc < 0:
            raise NoRealRoot(f"no real current for P={P_target} W")
        # cancellation-free form of (-b + sqrt(disc)) / (2a)
        iq = 2.0 * P_target / (b + math.sqrt(disc))
    id_ = (iq * tan_t if leading else -iq * tan_t) + 0.0  # no signed zero at unity pf
    return DqCurrents(iq, id_)


def modulation_indices(i: DqCurrents, g: GridParams) -> ModulationPair:
    """Steady-state modulation indices that hold ``i`` in equilibrium."""
    k = 2.0 / g.Vdc
    m = ModulationPair(
        k * (g.r * i.iq + g.xl * i.id + g.Vqg),
        k * (g.r * i.id - g.xl * i.iq),
    )
    if m.magnitude > 1.0:
        warnings.warn(f"modulation magnitude {m.magnitude:.3f} exceeds linear range", RuntimeWarning)
    return m


def dq_dynamics(i: DqCurrents, m: ModulationPair, g: GridParams) -> DqCurrents:
    half = 0.5 * g.Vdc
    diq = (half * m.mq - g.r * i.iq - g.xl * i.id - g.Vqg) / g.L
    did = (half * m.md - g.r * i.id + g.xl * i.iq) / g.L
    return DqCurrents(diq, did)


def powers(i: DqCurrents, g: GridParams) -> tuple[float, float]:
    """Active and reactive power at the grid terminals (Vdg = 0)."""
    return 1.5 * g.Vqg * i.iq, -1.5 * g.Vqg * i.id


def reactive_from_active(P: float, theta: float) -> float:
    return P * math.tan(theta)


def dc_link_current(m: ModulationPair, i: DqCurrents) -> float:
    """Averaged inverter input current drawn from the DC link."""
    return 0.75 * (m.mq * i.iq + m.md * i.id)
