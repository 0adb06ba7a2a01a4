"""The two sensor pathologies, side by side.

Feeds a smooth reference signal through the wideband (noisy, biased) and
slow (lagged) sensor models and shows what the fusion stage has to work
with, then recovers the classic first-order step response from the lag.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fuzzyfusion import SlowSensorState, WidebandSensorSpec
from fuzzyfusion.sensors import sample_wideband, step_lowpass

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

dt = 0.01
t = np.arange(0, 8, dt)
truth = 0.08 * np.sin(2 * np.pi * t / 4.0) * np.exp(-t / 6.0)

spec = WidebandSensorSpec(noise_variance=0.01, bias=-0.02, seed=7)
rng = spec.make_rng()
slow = SlowSensorState(time_constant=0.5, output=truth[0])

s1 = np.array([sample_wideband(spec, x, rng) for x in truth])
s2 = np.array([step_lowpass(slow, x, dt) for x in truth])

fig, ax = plt.subplots(figsize=(9, 4))
ax.plot(t, s1, lw=0.5, alpha=0.6, label="wideband: noisy, biased")
ax.plot(t, s2, lw=2, label="slow: clean but lagged")
ax.plot(t, truth, "k--", lw=1.5, label="truth")
ax.set_xlabel("time (s)")
ax.set_ylabel("signal")
ax.set_title("Complementary sensor characteristics")
ax.legend()
fig.tight_layout()
fig.savefig(out_dir / "sensor_pathologies.png", dpi=120)

# step response of the lag: output covers 63.2% of the step after one tau
tau = 0.5
state = SlowSensorState(time_constant=tau, output=0.0)
ts = np.arange(0, 4 * tau, dt)
resp = np.array([step_lowpass(state, 1.0, dt) for _ in ts])
fig, ax = plt.subplots(figsize=(6, 3.5))
ax.plot(ts, resp)
ax.axhline(1 - np.exp(-1), color="gray", ls=":")
ax.axvline(tau, color="gray", ls=":")
ax.set_xlabel("time (s)")
ax.set_ylabel("response")
ax.set_title(f"First-order lag step response (tau = {tau} s)")
fig.tight_layout()
fig.savefig(out_dir / "lowpass_step.png", dpi=120)

print(f"wideband sample error stats: mean={np.mean(s1 - truth):+.4f} std={np.std(s1 - truth):.4f}")
print(f"lag at one tau covers {resp[int(tau / dt) - 1]:.4f} of the step (1 - 1/e = {1 - np.exp(-1):.4f})")
print(f"figures written to {out_dir}")
