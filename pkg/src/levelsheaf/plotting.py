"""SVG rendering of graded barcodes.

One horizontal segment per bar, rows grouped by degree from the top.  Closed
endpoints are filled dots, open endpoints hollow ones, and infinite ends run
to the frame with an arrow head.
"""

from __future__ import annotations

import io
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .barcodes import GradedBarcode  # noqa: E402
from .exact import fmt, is_finite  # noqa: E402

_COLORS = ("#1f4e79", "#a83232", "#2e7d32", "#6a1b9a", "#ef6c00")


def _window(barcode: GradedBarcode) -> tuple[Fraction, Fraction]:
    finite = [e for bar in barcode for e in (bar.lo, bar.hi) if is_finite(e)]
    if not finite:
        return Fraction(-1), Fraction(1)
    lo, hi = min(finite), max(finite)
    pad = max((hi - lo) / 8, Fraction(1, 2))
    return lo - pad, hi + pad


def render_barcode_svg(barcode: GradedBarcode, title: str | None = None) -> str:
    lo, hi = _window(barcode)
    bars = list(barcode)
    degrees = sorted({b.degree for b in bars})
    rows = len(bars) + max(len(degrees) - 1, 0)

    with plt.rc_context({"svg.hashsalt": "levelsheaf", "svg.fonttype": "none", "font.size": 9}):
        fig, ax = plt.subplots(figsize=(6.0, 0.45 * max(rows, 1) + 1.2))
        y = rows
        ticks, labels = [], []
        for degree in degrees:
            color = _COLORS[degree % len(_COLORS)]
            group = [b for b in bars if b.degree == degree]
            top = y
            for bar in group:
                x0 = float(bar.lo) if is_finite(bar.lo) else float(lo)
                x1 = float(bar.hi) if is_finite(bar.hi) else float(hi)
                ax.plot([x0, x1], [y, y], color=color, lw=2, solid_capstyle="butt", zorder=1)
                for x, is_open, finite, marker in (
                    (x0, bar.interval.lo_open, is_finite(bar.lo), "<"),
                    (x1, bar.interval.hi_open, is_finite(bar.hi), ">"),
                ):
                    if not finite:
                        ax.plot([x], [y], marker=marker, color=color, ms=7, zorder=2, clip_on=False)
                    else:
                        face = "white" if is_open else color
                        ax.plot([x], [y], "o", mfc=face, mec=color, mew=1.5, ms=6, zorder=3, clip_on=False)
                y -= 1
            ticks.append((top + y + 1) / 2)
            labels.append(f"degree {degree}")
            y -= 1
        ax.set_xlim(float(lo), float(hi))
        ax.set_ylim(0, rows + 1)
        ax.set_yticks(ticks)
        ax.set_yticklabels(labels)
        ax.spines[["top", "right"]].set_visible(False)
        ax.set_xlabel("t")
        if title:
            ax.set_title(title)
        elif not bars:
            ax.set_title("empty barcode")
        else:
            ax.set_title(f"{len(bars)} bars, window [{fmt(lo)}, {fmt(hi)}]")
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
        plt.close(fig)
    return buf.getvalue()


def save_barcode_svg(barcode: GradedBarcode, path: str, title: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_barcode_svg(barcode, title))
