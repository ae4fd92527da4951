"""Averaged dq simulation of the inverter, from zero current to the solved operating point.

Also runs the 160 V / pi/36 rad / 2 ms scenario from its operating point and
prints the phase-current peak and injected power.
"""
from tlbgrid import (
    DqCurrents,
    GridParams,
    OperatingPoint,
    SimConfig,
    section4_preset,
    simulate_inverter_dq,
    solve_point,
)

grid = GridParams()

# %% start-up transient at pf = 0.8 lagging
row = solve_point(OperatingPoint(0.8, 600.0), grid)
run = simulate_inverter_dq(grid, row.modulation, DqCurrents(0.0, 0.0), SimConfig(dt=1e-5, t_end=0.1))
print(f"solver:    iq={row.iq:.4f} id={row.id:.4f}")
print(f"simulated: iq={run['iq'].samples[-1]:.4f} id={run['id'].samples[-1]:.4f}")
print(run.summary())

# %% high-power scenario
g4, pf, p_target, cfg = section4_preset()
row4 = solve_point(OperatingPoint(pf, p_target), g4)
run4 = simulate_inverter_dq(g4, row4.modulation, row4.currents, cfg)
print(f"\npi/36 scenario: Ipeak={row4.ipeak:.1f} A, P={run4['P'].samples[-1]:.0f} W, Q={run4['Q'].samples[-1]:.0f} var")

try:
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, ax = plt.subplots(3, 1, sharex=True, figsize=(8, 8))
ax[0].plot(run["iq"].t, run["iq"].samples, label="iq")
ax[0].plot(run["id"].t, run["id"].samples, label="id")
ax[0].legend()
for name in ("ia", "ib", "ic"):
    ax[1].plot(run[name].t, run[name].samples, label=name)
ax[1].legend()
ax[2].plot(run["P"].t, run["P"].samples, label="P")
ax[2].plot(run["Q"].t, run["Q"].samples, label="Q")
ax[2].set_xlabel("t (s)")
ax[2].legend()
plt.show()
