"""Static SVG figures for frameworks and framed cycles.

Points are projected into the chart's affine coordinates and scaled into a
fixed viewBox; output bytes are deterministic functions of the input.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PointAtInfinityError
from .framework import Framework
from .projective import AffineChart, ProjLine

WIDTH = 560.0
HEIGHT = 560.0
MARGIN = 50.0


def _chart_xy(point, chart: AffineChart):
    n = chart.normalize(point)
    if n is None:
        raise PointAtInfinityError(f"point {point} lies on the infinity line")
    field = chart.field
    drop = next(i for i in range(3) if field[i] != 0)
    keep = [i for i in range(3) if i != drop]
    return (n[keep[0]], n[keep[1]])


def _chart_line_coeffs(line: ProjLine, chart: AffineChart):
    """Affine equation A u + B v + C = 0 of the line in chart coordinates."""
    field = chart.field
    drop = next(i for i in range(3) if field[i] != 0)
    keep = [i for i in range(3) if i != drop]
    ld = Fraction(line.coeffs[drop])
    vd = Fraction(field[drop])
    a = Fraction(line.coeffs[keep[0]]) - ld * Fraction(field[keep[0]]) / vd
    b = Fraction(line.coeffs[keep[1]]) - ld * Fraction(field[keep[1]]) / vd
    c = ld / vd
    return a, b, c


def _fit(points_xy):
    """Screen mapping plus the (slightly padded) data window it covers."""
    xs = [float(x) for x, _ in points_xy]
    ys = [float(y) for _, y in points_xy]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = (WIDTH - 2 * MARGIN) / span
    pad = 0.8 * MARGIN / scale
    window = (lo_x - pad, lo_x + span + pad, lo_y - pad, lo_y + span + pad)

    def to_screen(x, y):
        u = MARGIN + (float(x) - lo_x) * scale
        v = HEIGHT - MARGIN - (float(y) - lo_y) * scale
        return u, v

    return to_screen, window


def _clip_line(a, b, c, to_screen, window):
    """Segment of A u + B v + C = 0 clipped to the data window, in screen
    coordinates; None if it misses the window."""
    a, b, c = float(a), float(b), float(c)
    x_min, x_max, y_min, y_max = window
    pts = []
    if abs(b) > 1e-12:
        for x in (x_min, x_max):
            y = -(a * x + c) / b
            if y_min - 1e-9 <= y <= y_max + 1e-9:
                pts.append((x, y))
    if abs(a) > 1e-12:
        for y in (y_min, y_max):
            x = -(b * y + c) / a
            if x_min - 1e-9 <= x <= x_max + 1e-9:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    return to_screen(*uniq[0]), to_screen(*uniq[1])


def _svg(elements) -> str:
    head = ('<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{WIDTH:.0f}" height="{HEIGHT:.0f}" '
            f'viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">\n')
    return head + "".join(f"  {e}\n" for e in elements) + "</svg>\n"


def render_framework(fw: Framework, chart: AffineChart | None = None,
                     framings=None) -> str:
    """SVG with labeled points, edges, and optional framing lines.

    `framings` is an optional iterable of ProjLine drawn dashed across the
    view window.
    """
    chart = chart or AffineChart.standard()
    ids = sorted(fw.graph.vertices)
    xy = {v: _chart_xy(fw.placement[v], chart) for v in ids}
    to_screen, window = _fit([xy[v] for v in ids])
    elements = []
    for l in framings or ():
        seg = _clip_line(*_chart_line_coeffs(l, chart), to_screen, window)
        if seg:
            (u1, v1), (u2, v2) = seg
            elements.append(
                f'<line x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
                'stroke="#888888" stroke-width="1" stroke-dasharray="6,4"/>')
    for a, b in fw.graph.edges:
        u1, v1 = to_screen(*xy[a])
        u2, v2 = to_screen(*xy[b])
        elements.append(
            f'<line x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
            'stroke="#1f3b73" stroke-width="2"/>')
    for v in ids:
        u, w = to_screen(*xy[v])
        elements.append(f'<circle cx="{u:.2f}" cy="{w:.2f}" r="4" fill="#b22222"/>')
        elements.append(
            f'<text x="{u + 7:.2f}" y="{w - 7:.2f}" '
            f'font-family="monospace" font-size="14">{v}</text>')
    return _svg(elements)


def render_framed_cycle(cycle, chart: AffineChart | None = None) -> str:
    """SVG of a framed cycle: cycle edges solid, framing lines dashed."""
    chart = chart or AffineChart.standard()
    k = len(cycle)
    xy = [_chart_xy(p, chart) for p in cycle.points]
    to_screen, window = _fit(xy)
    elements = []
    for l in cycle.framings:
        seg = _clip_line(*_chart_line_coeffs(l, chart), to_screen, window)
        if seg:
            (u1, v1), (u2, v2) = seg
            elements.append(
                f'<line x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
                'stroke="#888888" stroke-width="1" stroke-dasharray="6,4"/>')
    for i in range(k):
        u1, v1 = to_screen(*xy[i])
        u2, v2 = to_screen(*xy[(i + 1) % k])
        elements.append(
            f'<line x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
            'stroke="#1f3b73" stroke-width="2"/>')
    for i in range(k):
        u, w = to_screen(*xy[i])
        elements.append(f'<circle cx="{u:.2f}" cy="{w:.2f}" r="4" fill="#b22222"/>')
        elements.append(
            f'<text x="{u + 7:.2f}" y="{w - 7:.2f}" '
            f'font-family="monospace" font-size="14">q{i + 1}</text>')
    return _svg(elements)
