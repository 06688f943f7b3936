"""Static SVG rendering of solve results: one polyline per machine route."""
from __future__ import annotations

from .errors import SchemaViolation

PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#17becf", "#bcbd22", "#8c564b", "#e377c2", "#7f7f7f",
)

_PLOT_W = 640.0
_PLOT_H = 640.0
_LEGEND_W = 220.0
_PAD = 20.0


def render_svg(result: dict) -> str:
    """Render a SolveResult document to an SVG string.

    Expects the result JSON shape: "points" as [[x, y], ...] with the depot
    first, and "report"/"per_machine" entries carrying route index lists and
    per-machine distances.
    """
    try:
        points = [(float(x), float(y)) for x, y in result["points"]]
        per_machine = result["report"]["per_machine"]
        routes = [[int(t) for t in entry["route"]] for entry in per_machine]
        labels = [str(entry["machine"]) for entry in per_machine]
        distances = [float(entry["distance_m"]) for entry in per_machine]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaViolation(f"result document missing plot fields: {exc}") from None
    if not points or not routes:
        raise SchemaViolation("result document has no points or routes")
    for route in routes:
        for idx in route:
            if not 0 < idx < len(points):
                raise SchemaViolation(f"route index {idx} outside point list")

    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span_x = (max_x - min_x) or 1.0
    span_y = (max_y - min_y) or 1.0
    # 5% margin around the data bounding box
    min_x -= 0.05 * span_x
    max_x += 0.05 * span_x
    min_y -= 0.05 * span_y
    max_y += 0.05 * span_y
    scale = min(_PLOT_W / (max_x - min_x), _PLOT_H / (max_y - min_y))

    def sx(x: float) -> float:
        return _PAD + (x - min_x) * scale

    def sy(y: float) -> float:
        return _PAD + (max_y - y) * scale  # flip: SVG y grows downward

    width = _PAD * 2 + (max_x - min_x) * scale + _LEGEND_W
    height = _PAD * 2 + (max_y - min_y) * scale
    legend_x = _PAD + (max_x - min_x) * scale + 24.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    title = result.get("instance", "")
    if title:
        parts.append(f'<text x="{_PAD}" y="14" font-size="13" font-family="sans-serif">'
                     f'{title} (total {result.get("objective", 0.0):.2f})</text>')

    depot = points[0]
    for k, route in enumerate(routes):
        color = PALETTE[k % len(PALETTE)]
        path = [depot] + [points[i] for i in route] + [depot]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in path)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     f'stroke-width="1.6" opacity="0.9"/>')
    for x, y in points[1:]:
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.6" fill="#333333"/>')
    dx, dy = sx(depot[0]), sy(depot[1])
    parts.append(f'<rect x="{dx - 5:.2f}" y="{dy - 5:.2f}" width="10" height="10" '
                 f'fill="black" stroke="white" stroke-width="1"/>')
    parts.append(f'<text x="{dx + 8:.2f}" y="{dy - 6:.2f}" font-size="11" '
                 f'font-family="sans-serif">depot</text>')

    for k, (label, dist) in enumerate(zip(labels, distances)):
        color = PALETTE[k % len(PALETTE)]
        y = 30.0 + 20.0 * k
        parts.append(f'<rect x="{legend_x:.1f}" y="{y - 9:.1f}" width="14" height="4" fill="{color}"/>')
        parts.append(f'<text x="{legend_x + 20:.1f}" y="{y:.1f}" font-size="12" '
                     f'font-family="sans-serif">machine {label}: {dist:.2f}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
