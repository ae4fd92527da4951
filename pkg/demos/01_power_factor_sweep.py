"""Steady-state sweep of the grid-tied inverter over lagging and leading power factors.

Run with ``python demos/01_power_factor_sweep.py``. Prints the sweep tables
and, if matplotlib is available, draws Mq vs Md, Ipeak vs pF and Pg vs pF.
"""
import numpy as np

from tlbgrid import GridParams, pf_sweep, trend_series
from tlbgrid.steady_state import LAGGING_PFS, LEADING_PFS

grid = GridParams()  # r = 0.1 ohm, wL = 0.377 ohm, Vqg = 160 V, Vdc = 400 V
print(f"line reactance wL = {grid.xl:.4f} ohm")

# %% lagging and leading tables
for label, pfs in (("lagging", LAGGING_PFS), ("leading", LEADING_PFS)):
    rows = pf_sweep(pfs, 600.0, grid)
    print(f"\n{label}:   pf     Mq      Md      Iq      Id   Ipeak   Pg_dc   Pg_ac")
    for r in rows:
        print(f"        {r.pf:5.1f} {r.mq:6.3f} {r.md:7.4f} {r.iq:6.2f} {r.id:7.2f} {r.ipeak:6.2f} {r.pg_dc:7.1f} {r.pg_ac:7.1f}")

# %% trends: Mq is close to linear in Md, Ipeak falls as pF rises
rows = pf_sweep(np.round(np.arange(0.1, 1.0001, 0.05), 3), 600.0, grid)
trend = trend_series(rows)
print(f"\nMq = {trend.slope:.3f} * Md + {trend.intercept:.4f}   (R^2 = {trend.r_squared:.5f})")

try:
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, ax = plt.subplots(1, 3, figsize=(13, 4))
ax[0].plot(*trend.mq_vs_md, "o-")
ax[0].set(xlabel="Md", ylabel="Mq")
ax[1].plot(*trend.ipeak_vs_pf, "o-")
ax[1].set(xlabel="pF", ylabel="Ipeak (A)")
ax[2].plot(trend.pg_vs_pf[0], [r.pg_ac for r in rows], "o-", label="delivered")
ax[2].plot(*trend.pg_vs_pf, "s--", label="DC side")
ax[2].set(xlabel="pF", ylabel="P (W)")
ax[2].legend()
fig.tight_layout()
plt.show()
