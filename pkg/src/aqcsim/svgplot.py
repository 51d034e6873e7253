"""Dependency-free SVG scatter and heatmap rendering of record fields.

Output is plain text built from the records alone, so identical inputs
give byte-identical files. Points or cells are colored by a linear
colormap over the chosen field; records with NaN in any plotted field
are skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# dark-violet to yellow, evenly spaced anchor colors
_CMAP = (
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
)

WIDTH = 640
HEIGHT = 480
MARGIN_L = 70
MARGIN_R = 110
MARGIN_T = 30
MARGIN_B = 55


@dataclass(frozen=True)
class PlotSpec:
    x: str
    y: str
    color: str | None = None
    kind: str = "scatter"
    cmin: float | None = None
    cmax: float | None = None

    def __post_init__(self):
        if self.kind not in ("scatter", "heatmap"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if self.kind == "heatmap" and self.color is None:
            raise ValueError("heatmap needs a color field for the cell values")


def field_value(rec, name: str) -> float:
    """Resolve a plottable field: record columns or J1, J2, ... couplings."""
    simple = {
        "index": rec.index,
        "n": rec.n,
        "T": rec.T,
        "min_gap": rec.min_gap,
        "s_star": rec.s_star,
        "P": rec.success_prob,
        "delta_E": rec.energy_error,
        "delta": rec.avg_overlap,
        "abs_J_top": rec.abs_J_top,
        "ground_dim": rec.ground_subspace_dim,
        "norm_drift": rec.max_norm_drift,
        "M": rec.matrix_element_max,
        "criterion_bound": rec.criterion_bound,
    }
    if name in simple:
        return float(simple[name])
    if name.startswith("J") and name[1:].isdigit():
        idx = int(name[1:])
        if 0 <= idx < rec.couplings.J.shape[0]:
            return float(rec.couplings.J[idx])
    raise ValueError(f"unknown plot field {name!r}")


def color_hex(t: float) -> str:
    """Linear colormap lookup, t clamped to [0, 1]."""
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_CMAP) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(_CMAP) - 1)
    frac = pos - lo
    rgb = tuple(round(_CMAP[lo][c] + frac * (_CMAP[hi][c] - _CMAP[lo][c])) for c in range(3))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _num(v: float) -> str:
    return format(v, ".6g")


def _finite(vals):
    return [v for v in vals if math.isfinite(v)]


def _range(vals, pad: float):
    lo, hi = min(vals), max(vals)
    if hi == lo:
        lo -= 0.5
        hi += 0.5
    span = hi - lo
    return lo - pad * span, hi + pad * span


class _Canvas:
    def __init__(self):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        ]

    def add(self, s: str):
        self.parts.append(s)

    def text(self, x, y, s, anchor="middle", size=12, rotate=None):
        tr = f' transform="rotate(-90 {_num(x)} {_num(y)})"' if rotate else ""
        self.add(
            f'<text x="{_num(x)}" y="{_num(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}"{tr}>{s}</text>'
        )

    def finish(self) -> str:
        return "\n".join(self.parts) + "\n</svg>\n"


def _axes(canvas, xlab, ylab, xlo, xhi, ylo, yhi):
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    canvas.add(
        f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
        f'fill="none" stroke="black"/>'
    )
    for k in range(5):
        fx = k / 4.0
        px = x0 + fx * (x1 - x0)
        py = y0 - fx * (y0 - y1)
        canvas.add(f'<line x1="{_num(px)}" y1="{y0}" x2="{_num(px)}" y2="{y0 + 4}" stroke="black"/>')
        canvas.text(px, y0 + 18, _num(xlo + fx * (xhi - xlo)), size=11)
        canvas.add(f'<line x1="{x0 - 4}" y1="{_num(py)}" x2="{x0}" y2="{_num(py)}" stroke="black"/>')
        canvas.text(x0 - 8, py + 4, _num(ylo + fx * (yhi - ylo)), anchor="end", size=11)
    canvas.text((x0 + x1) / 2, HEIGHT - 12, xlab)
    canvas.text(18, (y0 + y1) / 2, ylab, rotate=True)


def _colorbar(canvas, label, clo, chi):
    x = WIDTH - MARGIN_R + 30
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    steps = 32
    for k in range(steps):
        f0 = k / steps
        f1 = (k + 1) / steps
        ya = y0 - f1 * (y0 - y1)
        hgt = (f1 - f0) * (y0 - y1)
        canvas.add(
            f'<rect x="{x}" y="{_num(ya)}" width="16" height="{_num(hgt + 0.5)}" '
            f'fill="{color_hex((f0 + f1) / 2)}"/>'
        )
    canvas.add(f'<rect x="{x}" y="{y1}" width="16" height="{y0 - y1}" fill="none" stroke="black"/>')
    canvas.text(x + 24, y0 + 4, _num(clo), anchor="start", size=11)
    canvas.text(x + 24, y1 + 8, _num(chi), anchor="start", size=11)
    canvas.text(x + 8, y1 - 8, label, size=11)


def render(records, spec: PlotSpec) -> str:
    """Build the SVG document for the given records and plot spec."""
    if not records:
        raise ValueError("no records to plot")
    names = [spec.x, spec.y] + ([spec.color] if spec.color else [])
    rows = []
    for rec in records:
        vals = [field_value(rec, nm) for nm in names]
        if all(math.isfinite(v) for v in vals):
            rows.append(vals)
    if not rows:
        raise ValueError("all records have NaN in a plotted field")

    if spec.color:
        cvals = [r[2] for r in rows]
        clo = spec.cmin if spec.cmin is not None else min(cvals)
        chi = spec.cmax if spec.cmax is not None else max(cvals)
        if chi == clo:
            chi = clo + 1.0
    else:
        clo = chi = 0.0

    canvas = _Canvas()
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T

    if spec.kind == "scatter":
        xlo, xhi = _range([r[0] for r in rows], 0.05)
        ylo, yhi = _range([r[1] for r in rows], 0.05)
        _axes(canvas, spec.x, spec.y, xlo, xhi, ylo, yhi)
        for r in rows:
            px = x0 + (r[0] - xlo) / (xhi - xlo) * (x1 - x0)
            py = y0 - (r[1] - ylo) / (yhi - ylo) * (y0 - y1)
            fill = color_hex((r[2] - clo) / (chi - clo)) if spec.color else "#3e4a8b"
            canvas.add(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="2" fill="{fill}"/>')
    else:
        xs = sorted({r[0] for r in rows})
        ys = sorted({r[1] for r in rows})
        if len(xs) < 2 or len(ys) < 2:
            raise ValueError("heatmap needs at least a 2x2 grid of distinct (x, y) values")
        dx = min(b - a for a, b in zip(xs, xs[1:]))
        dy = min(b - a for a, b in zip(ys, ys[1:]))
        xlo, xhi = xs[0] - dx / 2, xs[-1] + dx / 2
        ylo, yhi = ys[0] - dy / 2, ys[-1] + dy / 2
        _axes(canvas, spec.x, spec.y, xlo, xhi, ylo, yhi)
        sx = (x1 - x0) / (xhi - xlo)
        sy = (y0 - y1) / (yhi - ylo)
        for r in rows:
            px = x0 + (r[0] - dx / 2 - xlo) * sx
            py = y0 - (r[1] + dy / 2 - ylo) * sy
            canvas.add(
                f'<rect x="{_num(px)}" y="{_num(py)}" width="{_num(dx * sx + 0.5)}" '
                f'height="{_num(dy * sy + 0.5)}" fill="{color_hex((r[2] - clo) / (chi - clo))}"/>'
            )

    if spec.color:
        _colorbar(canvas, spec.color, clo, chi)
    return canvas.finish()


def emit_plot(records, spec: PlotSpec, path: str) -> None:
    """Render and write a standalone SVG file."""
    doc = render(records, spec)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(doc)
