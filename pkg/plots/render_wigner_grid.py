#!/usr/bin/env python3
"""Render the Wigner panel figure from a reproduce manifest.

Panels are arranged states x hamiltonians with a diverging colormap whose
range is symmetric about zero (|vmin| = |vmax|) so negativity is visible at a
glance; each panel is annotated with its stored S^2 value.  Before drawing,
the Kerr column is checked for phase-space isotropy straight from the CSV
marginals: Var_x and Var_p must agree within 1%.  Nothing is recomputed from
the model; the files are the interface.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SUPPORTED_SCHEMA = "1"
ISOTROPY_TOLERANCE = 0.01


def fail(message: str):
    raise SystemExit(f"render_wigner_grid: error: {message}")


def load_manifest(path: Path) -> dict:
    if not path.exists():
        fail(f"manifest not found: {path}")
    doc = json.loads(path.read_text())
    schema = doc.get("schema_version")
    if schema != SUPPORTED_SCHEMA:
        fail(f"unsupported schema_version {schema!r} (supported: {SUPPORTED_SCHEMA})")
    if doc.get("kind") != "wigner_grid":
        fail(f"manifest kind {doc.get('kind')!r} is not 'wigner_grid'")
    if not doc.get("panels"):
        fail("manifest has no panels to draw")
    return doc


def load_grid(path: Path):
    """-> (xs, ps, W) with W[i, j] = W(ps[i], xs[j])."""
    if not path.exists():
        fail(f"data file not found: {path}")
    with open(path) as fh:
        rows = list(csv.reader(fh))
    xs = np.array([float(v) for v in rows[0][1:]])
    ps = np.array([float(r[0]) for r in rows[1:]])
    W = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    if W.shape != (ps.size, xs.size):
        fail(f"{path}: ragged grid")
    return xs, ps, W


def variance_ratio(xs, ps, W) -> float:
    """Var_x / Var_p from the two marginals of the sampled Wigner function."""
    dx, dp = xs[1] - xs[0], ps[1] - ps[0]
    mx = W.sum(axis=0) * dp
    mp = W.sum(axis=1) * dx
    wx, wp = mx.sum() * dx, mp.sum() * dp
    mean_x = (xs * mx).sum() * dx / wx
    mean_p = (ps * mp).sum() * dp / wp
    var_x = ((xs - mean_x) ** 2 * mx).sum() * dx / wx
    var_p = ((ps - mean_p) ** 2 * mp).sum() * dp / wp
    return var_x / var_p


def check_kerr_isotropy(panels, base: Path):
    for panel in panels:
        if panel["hamiltonian"] != "kerr":
            continue
        xs, ps, W = load_grid(base / panel["file"])
        ratio = variance_ratio(xs, ps, W)
        if abs(ratio - 1.0) > ISOTROPY_TOLERANCE:
            fail(
                f"{panel['file']}: Kerr panel is not isotropic "
                f"(Var_x/Var_p = {ratio:.4f}); the inputs look wrong"
            )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    args = parser.parse_args(argv)

    doc = load_manifest(args.manifest)
    base = args.manifest.parent
    panels = doc["panels"]
    columns = doc.get("columns") or sorted({p["hamiltonian"] for p in panels})
    rows = doc.get("rows") or sorted({p["state"] for p in panels})
    lookup = {(p["hamiltonian"], p["state"]): p for p in panels}
    missing = [
        f"{h}/state {s}" for h in columns for s in rows if (h, s) not in lookup
    ]
    if missing:
        fail("manifest is missing panels: " + ", ".join(missing))

    check_kerr_isotropy(panels, base)

    fig, axes = plt.subplots(
        len(rows), len(columns),
        figsize=(2.9 * len(columns), 2.6 * len(rows)),
        squeeze=False,
    )
    for i, state in enumerate(rows):
        for j, ham in enumerate(columns):
            panel = lookup[(ham, state)]
            xs, ps, W = load_grid(base / panel["file"])
            vmax = float(np.abs(W).max()) or 1.0
            ax = axes[i][j]
            ax.imshow(
                W,
                origin="lower",
                extent=(xs[0], xs[-1], ps[0], ps[-1]),
                cmap="RdBu_r",
                vmin=-vmax,
                vmax=vmax,
            )
            ax.text(
                0.03, 0.97, f"$S^2$ = {panel['s_sq']:.3f}",
                transform=ax.transAxes, va="top", fontsize=7,
            )
            if i == 0:
                ax.set_title(ham, fontsize=9)
            if j == 0:
                ax.set_ylabel(f"state {state}\np", fontsize=8)
            if i == len(rows) - 1:
                ax.set_xlabel("x", fontsize=8)
    fig.tight_layout()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
