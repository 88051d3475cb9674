"""Figures rendered with matplotlib's Agg backend to deterministic SVG/PNG files."""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import RegularPolygon  # noqa: E402
import numpy as np  # noqa: E402

_RC = {
    "svg.hashsalt": "semibent",
    "svg.fonttype": "none",
    "font.size": 8,
}


def _save(fig, path=None, fmt: str = "svg") -> str | None:
    """Write ``fig`` to ``path`` (or return SVG text when ``path`` is None)."""
    meta = {"Date": None} if fmt == "svg" else {}
    if path is None:
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
        return buf.getvalue()
    fig.savefig(path, format=fmt, metadata=meta or None)
    plt.close(fig)
    return None


def _format_of(path) -> str:
    name = str(path).lower()
    return "png" if name.endswith(".png") else "svg"


def assignment_figure(assignment, periods: int = 1, title: str | None = None):
    """Hex tiling coloured by ``c``; each cell labelled with its ``(c, alpha)``."""
    with plt.rc_context(_RC):
        reps = max(0, periods - 1)
        cells = assignment.window(reps) if reps else dict(assignment.cells)
        cs = sorted({sid.c for sid in cells.values()})
        cmap = plt.get_cmap("tab20", max(len(cs), 1))
        colour = {c: cmap(i) for i, c in enumerate(cs)}
        fig, ax = plt.subplots(figsize=(7, 7))
        xs, ys = [], []
        for cell in sorted(cells, key=lambda c: (c.r, c.q)):
            sid = cells[cell]
            x, y = cell.q + cell.r / 2, cell.r * math.sqrt(3) / 2
            xs.append(x)
            ys.append(y)
            ax.add_patch(RegularPolygon((x, y), 6, radius=1 / math.sqrt(3),
                                        facecolor=colour[sid.c], edgecolor="black",
                                        linewidth=0.4))
            ax.text(x, y, f"{sid.c}\n{sid.alpha}", ha="center", va="center", fontsize=5)
        ax.set_xlim(min(xs) - 1, max(xs) + 1)
        ax.set_ylim(min(ys) - 1, max(ys) + 1)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title(title or f"{assignment.name}  D={assignment.claimed_D}  (labels: c / alpha)")
        fig.tight_layout()
    return fig


def assignment_svg(assignment, periods: int = 1, title: str | None = None, path=None):
    with plt.rc_context(_RC):
        fig = assignment_figure(assignment, periods, title)
        return _save(fig, path, _format_of(path) if path else "svg")


def ortho_table_figure(table, title: str = ""):
    """Heatmap of a :class:`~semibent.ortho.OrthoTable` (dark = orthogonal)."""
    with plt.rc_context(_RC):
        arr = table.as_array().astype(int)
        fig, ax = plt.subplots(figsize=(0.35 * len(table.cols) + 2, 0.35 * len(table.rows) + 1.5))
        ax.imshow(arr, cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
        ax.set_xticks(range(len(table.cols)), [f"H{c}" for c in table.cols], rotation=90)
        ax.set_yticks(range(len(table.rows)), [f"f{r}" for r in table.rows])
        ax.set_title(title or "orthogonality (dark = orthogonal)")
        fig.tight_layout()
    return fig


def save_ortho_table(table, path, title: str = ""):
    with plt.rc_context(_RC):
        _save(ortho_table_figure(table, title), path, _format_of(path))


def depth_figure(profile, title: str = ""):
    """Bar chart of the semi-bent fraction of restrictions at each order."""
    with plt.rc_context(_RC):
        orders = [o.order for o in profile.orders]
        frac = np.array([o.semibent / o.restrictions for o in profile.orders])
        fig, ax = plt.subplots(figsize=(5, 3))
        ax.bar(orders, frac, color=["tab:green" if f == 1 else "tab:red" for f in frac])
        ax.set_xlabel("restriction order")
        ax.set_ylabel("fraction semi-bent")
        ax.set_ylim(0, 1.05)
        ax.set_xticks(orders)
        ax.set_title(title or getattr(profile, "label", "") or getattr(profile, "function_id", ""))
        fig.tight_layout()
    return fig


def save_depth(profile, path, title: str = ""):
    with plt.rc_context(_RC):
        _save(depth_figure(profile, title), path, _format_of(path))
