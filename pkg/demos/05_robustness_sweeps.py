"""How far can the sensors degrade before fusion stops helping?

Reruns the three default robustness grids (slow-sensor time constant,
wideband noise variance, wideband bias) for the single-sensor, average and
fused pipelines.  Points where a pipeline drops the pendulum are plotted at
the top of the chart.  Fusion stays at the bottom everywhere.
"""

import math
import pathlib
import tempfile

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fuzzyfusion.experiments import (
    DEFAULT_BIAS_GRID,
    DEFAULT_TAU_GRID,
    DEFAULT_VARIANCE_GRID,
    build_config,
    run_sweep,
)

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

cfg = build_config()
modes = ["s2_only", "average", "fused"]
axes_spec = [
    ("s2.time_constant", DEFAULT_TAU_GRID, "slow sensor time constant (s)"),
    ("s1.noise_variance", DEFAULT_VARIANCE_GRID, "wideband noise variance"),
    ("s1.bias", DEFAULT_BIAS_GRID, "wideband bias"),
]

fig, plots = plt.subplots(1, 3, figsize=(15, 4.2))
with tempfile.TemporaryDirectory() as scratch:
    for ax, (axis, grid, label) in zip(plots, axes_spec):
        rows = run_sweep(cfg, axis, grid, modes, pathlib.Path(scratch) / axis)
        ceiling = 2 * max(r["iae"] for r in rows if r["status"] == "ok")
        for mode in modes:
            xs = [r["axis_value"] for r in rows if r["mode"] == mode]
            ys = [r["iae"] if r["status"] == "ok" else ceiling
                  for r in rows if r["mode"] == mode]
            fell = [r["status"] != "ok" for r in rows if r["mode"] == mode]
            ax.plot(xs, ys, "o-", label=mode)
            for x, y, f in zip(xs, ys, fell):
                if f:
                    ax.annotate("fell", (x, y), textcoords="offset points",
                                xytext=(0, 6), ha="center", fontsize=7)
        ax.set_xlabel(label)
        ax.set_ylabel("IAE")
        ax.set_yscale("log")
        ax.legend(fontsize=8)
        worst_fused = max(r["iae"] for r in rows if r["mode"] == "fused")
        best_rival = min(
            (r["iae"] if r["status"] == "ok" else math.inf)
            for r in rows if r["mode"] != "fused"
        )
        print(f"{axis}: worst fused IAE {worst_fused:.3f}, best rival {best_rival:.3f}")
fig.suptitle("Fusion quality across sensor parameter grids (falls plotted at ceiling)")
fig.tight_layout()
fig.savefig(out_dir / "robustness_sweeps.png", dpi=120)
print(f"figures written to {out_dir}")
