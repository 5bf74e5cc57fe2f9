#!/usr/bin/env python3
"""Render a level-diagram figure from a reproduce manifest.

Reads only the manifest and the CSV files it names; no physics is recomputed
here.  Rows marked unconverged are drawn dashed with markers and reported on
stderr.  Output is a PNG whose bytes depend only on the input files.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SUPPORTED_SCHEMA = "1"


def fail(message: str) -> "NoReturn":  # noqa: F821
    raise SystemExit(f"render_levels: error: {message}")


def load_manifest(path: Path) -> dict:
    if not path.exists():
        fail(f"manifest not found: {path}")
    doc = json.loads(path.read_text())
    schema = doc.get("schema_version")
    if schema != SUPPORTED_SCHEMA:
        fail(f"unsupported schema_version {schema!r} (supported: {SUPPORTED_SCHEMA})")
    if doc.get("kind") != "levels":
        fail(f"manifest kind {doc.get('kind')!r} is not 'levels'")
    if not doc.get("panels"):
        fail("manifest has no panels to draw")
    return doc


def load_curve(path: Path):
    """-> (control values, level columns, converged flags)."""
    if not path.exists():
        fail(f"data file not found: {path}")
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    if header[-1] != "converged" or not header[1:-1]:
        fail(f"{path}: expected <control>,level_*,converged columns")
    control, levels, converged = [], [], []
    for row in rows[1:]:
        control.append(float(row[0]))
        levels.append([float(v) for v in row[1:-1]])
        converged.append(row[-1] == "true")
    return control, levels, converged


def draw_curve(ax, path: Path, label: str):
    control, levels, converged = load_curve(path)
    k = len(levels[0])
    bad = [i for i, ok in enumerate(converged) if not ok]
    if bad:
        print(
            f"render_levels: warning: {path.name}: {len(bad)} unconverged row(s), "
            "drawn dashed",
            file=sys.stderr,
        )
    color = None
    for j in range(k):
        ys = [row[j] for row in levels]
        solid = [y if converged[i] else float("nan") for i, y in enumerate(ys)]
        line, = ax.plot(control, solid, lw=1.2, color=color,
                        label=label if j == 0 else None)
        color = line.get_color()
        if bad:
            dashed = [y if not converged[i] else float("nan") for i, y in enumerate(ys)]
            ax.plot(control, dashed, lw=1.0, ls="--", color=color)
            ax.plot([control[i] for i in bad], [ys[i] for i in bad],
                    ls="none", marker="x", ms=4, color=color)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    args = parser.parse_args(argv)

    doc = load_manifest(args.manifest)
    base = args.manifest.parent
    panels = doc["panels"]

    fig, axes = plt.subplots(
        1, len(panels), figsize=(4.2 * len(panels), 3.4), squeeze=False, sharey=True
    )
    for ax, panel in zip(axes[0], panels):
        for curve in panel["curves"]:
            draw_curve(ax, base / curve["file"], curve["label"])
        ax.set_title(panel.get("title") or panel.get("panel", ""))
        ax.set_xlabel(doc.get("control", ""))
        ax.legend(fontsize=8)
    axes[0][0].set_ylabel("level (ground-referenced)")
    fig.tight_layout()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
