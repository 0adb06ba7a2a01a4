"""The headline experiment: one pendulum, six ways of measuring it.

Runs the closed loop with every feedback mode on the default configuration
and compares the regulated angle traces and their error integrals.  The
slow sensor alone rings hard, the plain average is mediocre, and the fuzzy
fusion tracks close to the ideal-sensor response.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fuzzyfusion.experiments import build_config
from fuzzyfusion.metrics import iae, itae
from fuzzyfusion.pendulum import FEEDBACK_MODES, PendulumFellError, simulate

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

cfg = build_config()
results = {}
for mode in FEEDBACK_MODES:
    try:
        traj = simulate(
            cfg.plant,
            mode,
            s1_spec=cfg.wideband,
            s2_time_constant=cfg.s2_time_constant,
            aggregator_cfg=cfg.aggregator,
            predictor_cfg=cfg.predictor,
            seed=cfg.seed,
        )
        results[mode] = traj
        print(f"{mode:>16}: IAE={iae(traj.truth, cfg.plant.dt):7.3f}  "
              f"ITAE={itae(traj.truth, cfg.plant.dt):8.2f}")
    except PendulumFellError as err:
        print(f"{mode:>16}: fell at t={err.time:.1f}s")

fig, axes = plt.subplots(3, 2, figsize=(12, 9), sharex=True)
for ax, mode in zip(axes.ravel(), FEEDBACK_MODES):
    traj = results[mode]
    ax.plot(traj.time, traj.truth, lw=0.8)
    ax.axvline(cfg.plant.disturbance_time, color="red", ls=":", lw=1, label="disturbance")
    ax.set_title(mode)
    ax.set_ylabel("angle (rad)")
    ax.legend(loc="upper right", fontsize=8)
for ax in axes[-1]:
    ax.set_xlabel("time (s)")
fig.suptitle("Regulated pole angle by feedback mode")
fig.tight_layout()
fig.savefig(out_dir / "benchmark_modes.png", dpi=120)

# the aggregator internals during the fused run
traj = results["fused"]
fig, axes = plt.subplots(3, 1, figsize=(10, 7), sharex=True)
axes[0].plot(traj.time, traj.s1, lw=0.4, alpha=0.5, label="s1")
axes[0].plot(traj.time, traj.s2, lw=1.2, label="s2")
axes[0].plot(traj.time, traj.truth, "k--", lw=1, label="truth")
axes[0].set_ylabel("sensors (rad)")
axes[0].legend(fontsize=8)
axes[1].plot(traj.time, traj.w1, lw=0.6)
axes[1].set_ylabel("weight w1")
axes[2].plot(traj.time, traj.drift, lw=0.6)
axes[2].set_ylabel("drift (rad)")
axes[2].set_xlabel("time (s)")
fig.suptitle("Inside the fused run")
fig.tight_layout()
fig.savefig(out_dir / "fused_internals.png", dpi=120)

iaes = {m: iae(tr.truth, cfg.plant.dt) for m, tr in results.items()}
fig, ax = plt.subplots(figsize=(8, 4))
ax.bar(range(len(iaes)), list(iaes.values()))
ax.set_xticks(range(len(iaes)), list(iaes), rotation=20)
ax.set_ylabel("IAE")
ax.set_yscale("log")
ax.set_title("Integral absolute error by feedback mode (log scale)")
fig.tight_layout()
fig.savefig(out_dir / "iae_by_mode.png", dpi=120)
print(f"figures written to {out_dir}")
