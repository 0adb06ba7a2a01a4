"""What the rule base actually computes.

Sweeps the two normalized inputs over the unit square and draws the
resulting sensor-weight and drift surfaces, plus the complementary
membership pair on one input.  Outputs land in demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fuzzyfusion import LinguisticPair, RuleBase, infer

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# membership pair on a universe of 0..0.08 rad (the default reading-gap span)
pair = LinguisticPair(0.0, 0.08)
xs = np.linspace(-0.01, 0.1, 300)
fig, ax = plt.subplots(figsize=(6, 3))
ax.plot(xs, [pair.membership_small(x) for x in xs], label="small")
ax.plot(xs, [pair.membership_large(x) for x in xs], label="large")
ax.set_xlabel("|s1 - s2| (rad)")
ax.set_ylabel("membership")
ax.set_title("Complementary linguistic pair (clamped outside the universe)")
ax.legend()
fig.tight_layout()
fig.savefig(out_dir / "membership_pair.png", dpi=120)

rules = RuleBase()
grid = np.linspace(0.0, 1.0, 101)
w1 = np.empty((grid.size, grid.size))
drift = np.empty_like(w1)
for i, v in enumerate(grid):
    for j, u in enumerate(grid):
        w1[i, j], drift[i, j] = infer(rules, u, v)

fig, axes = plt.subplots(1, 2, figsize=(11, 4))
for ax, surface, title in (
    (axes[0], w1, "wideband sensor weight w1(u, v)"),
    (axes[1], drift, "drift level (u, v)"),
):
    im = ax.imshow(surface, origin="lower", extent=[0, 1, 0, 1], aspect="auto", cmap="viridis")
    ax.set_xlabel("u = normalized |s1 - s2|")
    ax.set_ylabel("v = normalized |ds2/dt|")
    ax.set_title(title)
    fig.colorbar(im, ax=ax)
fig.tight_layout()
fig.savefig(out_dir / "inference_surfaces.png", dpi=120)

print("corners of the weight surface:")
for u, v in ((0, 0), (0, 1), (1, 0), (1, 1)):
    w, d = infer(rules, u, v)
    print(f"  u={u} v={v}: w1={w:.2f} drift={d:.2f}")
print(f"figures written to {out_dir}")
