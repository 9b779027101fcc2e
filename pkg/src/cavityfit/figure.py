"""Deterministic SVG scatter figure: measured y = r^2 chi vs refractive index.

Hand-rolled SVG so the output is textual, diffable and dependency-free.
Rendering the same rows and fits twice yields byte-identical markup: all
floats are written with six significant figures and nothing (timestamps,
ids, random jitter) varies between runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cavity import CavityModel, RefractiveIndex, chi
from .corpus import DerivedRow
from .errors import ValidationError, expect_type
from .fit import FitResult

# Pixel margins around the plot area.
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 25
_MARGIN_TOP = 20
_MARGIN_BOTTOM = 55

_X_LABEL = "refractive index n"
_Y_LABEL = "r_eff^2 * chi (nm^2)"


@dataclass(frozen=True)
class PlotSpec:
    """Figure geometry and styling knobs."""

    x_min: float = 1.0
    x_max: float = 2.3
    curve_samples: int = 256
    error_bar_fraction: float = 0.10
    width_px: int = 800
    height_px: int = 600

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValidationError("x range must be finite")
        if self.x_min < 1.0:
            raise ValidationError(f"x_min must be >= 1, got {self.x_min!r}")
        if self.x_min >= self.x_max:
            raise ValidationError(
                f"x_min must be smaller than x_max, got [{self.x_min!r}, {self.x_max!r}]"
            )
        if not isinstance(self.curve_samples, int) or self.curve_samples < 2:
            raise ValidationError(f"curve_samples must be an integer >= 2, got {self.curve_samples!r}")
        f = self.error_bar_fraction
        if not isinstance(f, (int, float)) or not 0.0 < float(f) < 1.0:
            raise ValidationError(f"error_bar_fraction must lie in (0, 1), got {f!r}")
        for name, v in (("width_px", self.width_px), ("height_px", self.height_px)):
            if not isinstance(v, int) or v < 200:
                raise ValidationError(f"{name} must be an integer >= 200, got {v!r}")


def _fmt(v: float) -> str:
    return format(v, ".6g")


def render_figure(
    rows: Sequence[DerivedRow],
    fit_virtual: FitResult,
    fit_real: FitResult,
    plot: PlotSpec = PlotSpec(),
    include_vacuum: bool = False,
) -> str:
    """Render markers with error bars plus both fitted model curves as SVG."""
    expect_type("plot", plot, PlotSpec)
    expect_type("fit_virtual", fit_virtual, FitResult)
    expect_type("fit_real", fit_real, FitResult)
    if fit_virtual.model is not CavityModel.VIRTUAL or fit_real.model is not CavityModel.REAL:
        raise ValidationError("fit results passed in the wrong order (virtual, real)")
    markers = []
    for i, row in enumerate(rows):
        expect_type(f"rows[{i}]", row, DerivedRow)
        if row.base.n.value == 1.0 and not include_vacuum:
            continue
        markers.append((row.base.n.value, row.y_measured))
    if not markers:
        raise ValidationError("no rows to plot")

    frac = float(plot.error_bar_fraction)
    curves = []
    for result, dashed in ((fit_virtual, False), (fit_real, True)):
        model = result.model
        pts = []
        for i in range(plot.curve_samples):
            x = plot.x_min + (plot.x_max - plot.x_min) * i / (plot.curve_samples - 1)
            pts.append((x, result.reff_sq * chi(model, RefractiveIndex(x)).value))
        curves.append((pts, dashed))

    y_top = 1.05 * max(
        max(y * (1.0 + frac) for _, y in markers),
        max(y for pts, _ in curves for _, y in pts),
    )

    plot_w = plot.width_px - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = plot.height_px - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - plot.x_min) / (plot.x_max - plot.x_min) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - y / y_top * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{plot.width_px}" '
        f'height="{plot.height_px}" viewBox="0 0 {plot.width_px} {plot.height_px}">',
        "<defs>",
        '<path id="star" d="M-4 0H4M0 -4V4M-2.83 -2.83L2.83 2.83M-2.83 2.83L2.83 -2.83" '
        'stroke="#000000" stroke-width="1.2" fill="none"/>',
        "</defs>",
        f'<rect width="{plot.width_px}" height="{plot.height_px}" fill="#ffffff"/>',
        # axes
        f'<g stroke="#000000" stroke-width="1" fill="none">',
        f'<line x1="{_fmt(px(plot.x_min))}" y1="{_fmt(py(0.0))}" '
        f'x2="{_fmt(px(plot.x_max))}" y2="{_fmt(py(0.0))}"/>',
        f'<line x1="{_fmt(px(plot.x_min))}" y1="{_fmt(py(0.0))}" '
        f'x2="{_fmt(px(plot.x_min))}" y2="{_fmt(py(y_top))}"/>',
        "</g>",
    ]

    tick_len = 5
    labels = ['<g font-family="sans-serif" font-size="12" fill="#000000">']
    ticks = ['<g stroke="#000000" stroke-width="1">']
    for i in range(6):
        x = plot.x_min + (plot.x_max - plot.x_min) * i / 5
        ticks.append(
            f'<line x1="{_fmt(px(x))}" y1="{_fmt(py(0.0))}" '
            f'x2="{_fmt(px(x))}" y2="{_fmt(py(0.0) + tick_len)}"/>'
        )
        labels.append(
            f'<text x="{_fmt(px(x))}" y="{_fmt(py(0.0) + 20)}" text-anchor="middle">{_fmt(x)}</text>'
        )
    for i in range(6):
        y = y_top * i / 5
        ticks.append(
            f'<line x1="{_fmt(px(plot.x_min) - tick_len)}" y1="{_fmt(py(y))}" '
            f'x2="{_fmt(px(plot.x_min))}" y2="{_fmt(py(y))}"/>'
        )
        labels.append(
            f'<text x="{_fmt(px(plot.x_min) - 8)}" y="{_fmt(py(y) + 4)}" text-anchor="end">{_fmt(y)}</text>'
        )
    ticks.append("</g>")
    labels.append(
        f'<text x="{_fmt(_MARGIN_LEFT + plot_w / 2)}" y="{_fmt(plot.height_px - 12)}" '
        f'text-anchor="middle">{_X_LABEL}</text>'
    )
    labels.append(
        f'<text x="14" y="{_fmt(_MARGIN_TOP + plot_h / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 14 {_fmt(_MARGIN_TOP + plot_h / 2)})">{_Y_LABEL}</text>'
    )
    labels.append("</g>")
    parts.extend(ticks)
    parts.extend(labels)

    for pts, dashed in curves:
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
        dash = ' stroke-dasharray="8 5"' if dashed else ""
        parts.append(
            f'<polyline fill="none" stroke="#000000" stroke-width="1.5"{dash} points="{coords}"/>'
        )

    bars = ['<g stroke="#000000" stroke-width="1">']
    for x, y in markers:
        lo, hi = py(y * (1.0 - frac)), py(y * (1.0 + frac))
        xp = px(x)
        bars.append(f'<line x1="{_fmt(xp)}" y1="{_fmt(lo)}" x2="{_fmt(xp)}" y2="{_fmt(hi)}"/>')
        bars.append(f'<line x1="{_fmt(xp - 3)}" y1="{_fmt(lo)}" x2="{_fmt(xp + 3)}" y2="{_fmt(lo)}"/>')
        bars.append(f'<line x1="{_fmt(xp - 3)}" y1="{_fmt(hi)}" x2="{_fmt(xp + 3)}" y2="{_fmt(hi)}"/>')
    bars.append("</g>")
    parts.extend(bars)
    for x, y in markers:
        parts.append(f'<use href="#star" x="{_fmt(px(x))}" y="{_fmt(py(y))}"/>')

    legend_x = _MARGIN_LEFT + 14
    legend_y = _MARGIN_TOP + 18
    entries = [
        (False, f"virtual cavity: reff = {_fmt(fit_virtual.reff.value)} nm"),
        (True, f"real cavity: reff = {_fmt(fit_real.reff.value)} nm"),
    ]
    parts.append('<g font-family="sans-serif" font-size="12" fill="#000000">')
    for i, (dashed, text) in enumerate(entries):
        y = legend_y + 18 * i
        dash = ' stroke-dasharray="8 5"' if dashed else ""
        parts.append(
            f'<line x1="{legend_x}" y1="{y - 4}" x2="{legend_x + 34}" y2="{y - 4}" '
            f'stroke="#000000" stroke-width="1.5"{dash}/>'
        )
        parts.append(f'<text x="{legend_x + 42}" y="{y}">{text}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
