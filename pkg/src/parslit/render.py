"""SVG pictures of slit configurations and critical graphs.

The rendered x coordinate is the harmonic coordinate u (the real part
of the flat coordinate), so every slit is a horizontal segment running
from the left edge of the view window to its tip.  All geometry is
computed exactly; floats appear only in the final coordinate strings,
formatted to a fixed precision so identical input yields byte-identical
output.
"""

from __future__ import annotations

from fractions import Fraction

from .core import ParallelSlitDomain, SlitError
from .surface import GluedGrid
from .xrat import format_rational, parse_rational

SCALE = 60  # pixels per unit length
PAD = 10  # pixel margin inside the canvas


class EmptyView(SlitError):
    """The view window has nonpositive width or height."""


class View:
    __slots__ = ("xmin", "xmax", "ymin", "ymax")

    def __init__(self, xmin, xmax, ymin, ymax):
        xmin, xmax = Fraction(xmin), Fraction(xmax)
        ymin, ymax = Fraction(ymin), Fraction(ymax)
        if xmin >= xmax or ymin >= ymax:
            raise EmptyView(
                "view %s:%s:%s:%s has no interior" % (xmin, xmax, ymin, ymax)
            )
        object.__setattr__(self, "xmin", xmin)
        object.__setattr__(self, "xmax", xmax)
        object.__setattr__(self, "ymin", ymin)
        object.__setattr__(self, "ymax", ymax)

    def __setattr__(self, name, value):
        raise AttributeError("View is immutable")

    def __repr__(self):
        return "View(%s, %s, %s, %s)" % (self.xmin, self.xmax, self.ymin, self.ymax)


def parse_view(text: str) -> View:
    """Parse ``XMIN:XMAX:YMIN:YMAX`` with exact rational entries."""
    parts = text.split(":")
    if len(parts) != 4:
        raise SlitError("view must be XMIN:XMAX:YMIN:YMAX, got %r" % (text,))
    return View(*(parse_rational(p) for p in parts))


class _Slit:
    """One slit pair: a zero with its two levels and common tip."""

    __slots__ = ("index", "tip", "lower", "upper")

    def __init__(self, index, tip, lower, upper):
        self.index = index
        self.tip = tip
        self.lower = lower
        self.upper = upper


def _slits_of_domain(domain: ParallelSlitDomain):
    label, coords = domain.label, domain.coords
    slits = []
    for i in range(1, label.h + 1):
        prev, cur = label.sigmas[i - 1].word, label.sigmas[i].word
        moved = [j for j in range(2 * label.h) if prev[j] != cur[j]]
        if len(moved) != 2:
            raise SlitError(
                "column %d changes %d levels, expected 2" % (i, len(moved))
            )
        lo, hi = coords.b[moved[0]], coords.b[moved[1]]
        slits.append(_Slit(i, coords.a[i - 1], min(lo, hi), max(lo, hi)))
    return slits


def _slits_of_grid(grid: GluedGrid):
    # lazy import: uniformize already imports surface
    from .uniformize import develop, merge_fake_walls, trace_critical_graph

    merged = merge_fake_walls(grid)
    dev = develop(merged, trace_critical_graph(merged))
    by_wall = {}
    for bank in dev.banks:
        by_wall.setdefault(bank.ray.zero_wall, []).append(bank)
    slits = []
    # number zeros by descending tip, matching the normal-form order
    walls = sorted(by_wall, key=lambda w: -min(b.tip_x for b in by_wall[w]))
    for index, wall in enumerate(walls, 1):
        banks = by_wall[wall]
        levels = sorted({b.lower_level for b in banks} | {b.upper_level for b in banks})
        tips = {b.tip_x for b in banks}
        if len(levels) != 2 or len(tips) != 1:
            raise SlitError("wall %d does not carry a simple slit pair" % wall)
        slits.append(_Slit(index, tips.pop(), levels[0], levels[1]))
    return slits


def _default_view(slits):
    xs = [s.tip for s in slits]
    ys = [s.lower for s in slits] + [s.upper for s in slits]
    span = max(xs) - min(xs) + max(ys) - min(ys) + 2
    return View(min(xs) - span, max(xs) + 1, min(ys) - 1, max(ys) + 1)


def _fmt(value) -> str:
    return "%.4f" % (float(value),)


def render_svg(obj, view: View | None = None) -> str:
    """Draw a slit picture; grids get the critical-graph styling."""
    if isinstance(obj, ParallelSlitDomain):
        slits = _slits_of_domain(obj)
        overlay = False
    elif isinstance(obj, GluedGrid):
        slits = _slits_of_grid(obj)
        overlay = True
    else:
        raise TypeError("cannot render %r" % (type(obj).__name__,))
    if view is None:
        view = _default_view(slits)

    width = float(view.xmax - view.xmin) * SCALE + 2 * PAD
    height = float(view.ymax - view.ymin) * SCALE + 2 * PAD

    def sx(x):
        return _fmt(float(x - view.xmin) * SCALE + PAD)

    def sy(y):
        return _fmt(float(view.ymax - y) * SCALE + PAD)

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%s" height="%s" viewBox="0 0 %s %s">' % (_fmt(width), _fmt(height), _fmt(width), _fmt(height)),
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    slit_color = "crimson" if overlay else "black"
    for s in slits:
        if s.tip < view.xmin:
            continue
        x2 = min(s.tip, view.xmax)
        for level in (s.lower, s.upper):
            if view.ymin <= level <= view.ymax:
                lines.append(
                    '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="2"/>'
                    % (sx(view.xmin), sy(level), sx(x2), sy(level), slit_color)
                )
        if s.tip <= view.xmax:
            # link the two banks of the pair at their common tip
            lines.append(
                '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="1" stroke-dasharray="4 3"/>'
                % (sx(s.tip), sy(s.lower), sx(s.tip), sy(s.upper), slit_color)
            )
            for level in (s.lower, s.upper):
                lines.append(
                    '<circle cx="%s" cy="%s" r="3" fill="%s"/>'
                    % (sx(s.tip), sy(level), slit_color)
                )
            lines.append(
                '<text x="%s" y="%s" font-size="11" font-family="monospace" fill="%s">a_%d = %s</text>'
                % (
                    sx(s.tip),
                    _fmt(float(sy(s.upper)) - 6),
                    slit_color,
                    s.index,
                    format_rational(s.tip),
                )
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
