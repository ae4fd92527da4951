"""Switched simulation of the three-level converter under interleaved PWM.

Shows the inductor current and the two capacitor voltages for a few duty
ratios and compares the mean output with the steady-state gain 2/(d1 + d4).
"""
from tlbgrid import ConverterParams, DutyPair, SimConfig, simulate_converter, voltage_gain

VS = 400.0

# %% gain check over a few symmetric duties
for dd in (0.5, 0.6, 0.8, 1.0):
    d = DutyPair(dd, dd)
    p = ConverterParams.for_power(VS * voltage_gain(d), 600.0, Vs=VS)
    run = simulate_converter(p, d, SimConfig(t_end=0.02))
    m = run.metrics
    print(
        f"d1=d4={dd:.2f}  gain={voltage_gain(d):.3f}  vo/Vs={m['vo'].mean / VS:.4f}  "
        f"iL ripple={m['iL'].ripple_pp:.3f} A  vc1-vc2={m['vc1'].mean - m['vc2'].mean:+.4f} V"
    )

# %% a few switching periods at d = 0.6, where Mode IV appears between Modes II and III
d = DutyPair(0.6, 0.6)
p = ConverterParams.for_power(VS * voltage_gain(d), 600.0, Vs=VS)
run = simulate_converter(p, d, SimConfig(t_end=5 / 18e3))

try:
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

fig, ax = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
ax[0].plot(run["iL"].t * 1e6, run["iL"].samples)
ax[0].set_ylabel("iL (A)")
ax[1].plot(run["vc1"].t * 1e6, run["vc1"].samples, label="vc1")
ax[1].plot(run["vc2"].t * 1e6, run["vc2"].samples, label="vc2")
ax[1].set(xlabel="t (us)", ylabel="V")
ax[1].legend()
plt.show()
