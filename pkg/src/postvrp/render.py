"""Deterministic SVG rendering of maps, deliveries and routes.

SVG keeps outputs diffable and dependency-free.  Delivery dots are pushed
2 pixel units off their edge along the normal, to the + or - side, so
opposite-side deliveries are visually distinct.  An optional raster
background may be referenced by link.
"""

from __future__ import annotations

import math

from .geometry import SIDE_PLUS, DeliveryLocation, StreetGraph, location_point
from .model import StreetModel
from .sampling import DeliverySet

ROUTE_COLORS = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#17becf", "#bcbd22", "#666666",
)
SIDE_OFFSET_PX = 2.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def delivery_draw_position(
    graph: StreetGraph, loc: DeliveryLocation, offset: float
) -> tuple[float, float]:
    """Delivery position pushed off the edge to its street side."""
    e = graph.edges[loc.edge]
    (ux, uy), (vx, vy) = graph.vertices[e.u], graph.vertices[e.v]
    px, py = location_point(graph, loc)
    dx, dy = vx - ux, vy - uy
    norm = math.hypot(dx, dy)
    nx, ny = dy / norm, -dx / norm
    sign = 1.0 if loc.side == SIDE_PLUS else -1.0
    return (px + sign * offset * nx, py + sign * offset * ny)


def render_svg(
    model: StreetModel,
    graph: StreetGraph,
    deliveries: DeliverySet | None = None,
    routes: list[list[int]] | None = None,
    background_href: str | None = None,
) -> str:
    """Streets as polylines, deliveries as side-offset dots, routes as
    colored tours through the delivery positions, depot highlighted."""
    scale = model.pixel_value
    width = model.background[0] * scale
    height = model.background[1] * scale
    offset = SIDE_OFFSET_PX * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    if background_href:
        parts.append(
            f'<image href="{background_href}" x="0" y="0" '
            f'width="{_fmt(width)}" height="{_fmt(height)}"/>'
        )

    for st in model.streets:
        pts = " ".join(f"{_fmt(x * scale)},{_fmt(y * scale)}" for x, y in st.chain)
        stroke = max(st.width_px * scale, 0.5 * scale)
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#c8c8c8" '
            f'stroke-width="{_fmt(stroke)}" stroke-linecap="round"/>'
        )

    positions: dict[int, tuple[float, float]] = {}
    if deliveries is not None:
        for i, d in enumerate(deliveries.deliveries):
            positions[i] = delivery_draw_position(graph, d, offset)

    if routes and deliveries is not None:
        depot = positions[0]
        for ri, route in enumerate(routes):
            color = ROUTE_COLORS[ri % len(ROUTE_COLORS)]
            chain = [depot] + [positions[c] for c in route] + [depot]
            pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in chain)
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="{_fmt(0.8 * scale)}" stroke-opacity="0.9"/>'
            )

    if deliveries is not None:
        r = _fmt(1.5 * scale)
        for i in range(1, len(deliveries.deliveries)):
            x, y = positions[i]
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="#1a1a7a"/>')
        dx, dy = positions[0]
        parts.append(
            f'<circle cx="{_fmt(dx)}" cy="{_fmt(dy)}" r="{_fmt(4.0 * scale)}" '
            'fill="#d40000" stroke="#000000" stroke-width="1"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
