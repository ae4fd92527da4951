import math

import numpy as np
import pytest

from tlbgrid.inverter_dq import GridParams, dq_dynamics
from tlbgrid.steady_state import (
    LAGGING_PFS,
    LEADING_PFS,
    InsufficientPoints,
    OperatingPoint,
    SteadyStateRow,
    pf_sweep,
    solve_point,
    trend_series,
)

from oracles import TABLE_III_ORACLE

G = GridParams()


@pytest.mark.parametrize("pf", sorted(TABLE_III_ORACLE))
def test_solve_point_matches_oracle(pf):
    iq, id_, ipeak, mq, md, pg_dc, pg_ac = TABLE_III_ORACLE[pf]
    row = solve_point(OperatingPoint(pf, 600.0), G)
    assert (row.iq, row.id, row.ipeak, row.mq, row.md, row.pg_dc, row.pg_ac) == pytest.approx(
        (iq, id_, ipeak, mq, md, pg_dc, pg_ac), rel=1e-12
    )


def test_solve_point_row_08():
    row = solve_point(OperatingPoint(0.8, 600.0), G)
    assert row.mq == pytest.approx(0.795, abs=0.004)
    assert row.md == pytest.approx(-0.006, abs=0.001)
    assert row.ipeak == pytest.approx(3.12, abs=0.01)


def test_solve_point_lossless_unity():
    row = solve_point(OperatingPoint(1.0, 600.0), GridParams(r=0.0))
    assert (row.iq, row.id, row.ipeak, row.pg_dc) == pytest.approx((2.5, 0.0, 2.5, 600.0))


def test_empty_sweep():
    assert pf_sweep([], 600.0, G) == []


def test_sweep_preserves_order_and_reports_failures():
    rows = pf_sweep([0.8, 1.7, 0.2], 600.0, G)
    assert [r.pf for r in rows] == [0.8, 1.7, 0.2]
    assert rows[0].ok and rows[2].ok
    assert not rows[1].ok and "out of range" in rows[1].error
    assert math.isnan(rows[1].mq)


def test_leading_sweep_sign_convention():
    rows = pf_sweep(LEADING_PFS, 600.0, G)
    for lead, lag in zip(rows, pf_sweep(LAGGING_PFS, 600.0, G)):
        assert lead.id == pytest.approx(-lag.id) and lead.id > 0
        assert lead.q < 0 < lag.q
        assert lead.iq == lag.iq


def test_rows_satisfy_power_balance_and_fixed_point():
    for row in pf_sweep(LAGGING_PFS + LEADING_PFS + (1.0,), 600.0, G):
        rhs = 1.5 * G.Vqg * row.iq + 1.5 * G.r * (row.iq**2 + row.id**2)
        assert row.pg_dc == pytest.approx(rhs, rel=1e-9)
        assert dq_dynamics(row.currents, row.modulation, G) == pytest.approx((0, 0), abs=1e-9)
        assert row.ipeak == pytest.approx(math.hypot(row.iq, row.id), rel=1e-15)


def test_monotone_trends():
    rows = pf_sweep(LAGGING_PFS + (1.0,), 600.0, G)
    ipeak = [r.ipeak for r in rows]
    pac = [r.pg_ac for r in rows]
    assert all(a > b for a, b in zip(ipeak, ipeak[1:]))
    assert all(a <= b for a, b in zip(pac, pac[1:]))
    assert max(pac) == pac[-1]


def test_trend_series_linear_fit():
    ts = trend_series(pf_sweep(LAGGING_PFS, 600.0, G))
    assert ts.r_squared > 0.99 and not ts.degenerate
    md, mq = ts.mq_vs_md
    assert np.allclose(ts.slope * md + ts.intercept, mq, atol=1e-3)
    assert list(ts.ipeak_vs_pf[0]) == list(LAGGING_PFS)


def test_trend_series_degenerate():
    row = solve_point(OperatingPoint(0.5, 600.0), G)
    ts = trend_series([row, row])
    assert ts.degenerate and math.isnan(ts.r_squared)


def test_trend_series_needs_two_rows():
    with pytest.raises(InsufficientPoints):
        trend_series([solve_point(OperatingPoint(0.5, 600.0), G)])
    with pytest.raises(InsufficientPoints):
        trend_series([SteadyStateRow(pf=2.0, error="bad"), solve_point(OperatingPoint(0.5, 600.0), G)])
