"""Planar street graph built from polygonal chains.

Chains are scaled from pixels to length units, every pairwise segment
crossing becomes a vertex, and coincident points within ``MERGE_EPS`` are
merged.  Construction is brute force over segment pairs (paid once per
model load) and fully deterministic for identical model bytes: vertices
are numbered in first-appearance order while walking streets in model
order, and edges follow (street, chain segment, split position) order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import GeometryError
from .model import StreetModel

MERGE_EPS = 1e-6

SIDE_PLUS = "+"
SIDE_MINUS = "-"


class Edge(NamedTuple):
    u: int
    v: int
    street: int
    seg: int  # segment index along the street chain


class DeliveryLocation(NamedTuple):
    """A point on the street map: edge id, affine parameter, street side.

    The point sits at ``alpha * u + (1 - alpha) * v`` for the edge (u, v),
    so it is distance ``(1 - alpha) * w'(e)`` from u and ``alpha * w'(e)``
    from v.  ``side`` is "+" or "-".
    """

    edge: int
    alpha: float
    side: str


@dataclass
class StreetGraph:
    vertices: list[tuple[float, float]]
    edges: list[Edge]
    edge_weight: list[float]
    _adj: list[list[tuple[int, float]]] | None = field(default=None, repr=False, compare=False)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Per-vertex list of (neighbor, weight); built lazily, then cached."""
        if self._adj is None:
            adj: list[list[tuple[int, float]]] = [[] for _ in self.vertices]
            for e, w in zip(self.edges, self.edge_weight):
                adj[e.u].append((e.v, w))
                adj[e.v].append((e.u, w))
            self._adj = adj
        return self._adj


def _intersect_params(a, b, c, d):
    """Intersection of segments ab and cd in parameter space.

    Returns ('point', t, u) when they meet at a single point (t along ab,
    u along cd, both in [0,1]), 'overlap' for collinear segments sharing
    more than one point, and None otherwise.
    """
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    qpx, qpy = c[0] - a[0], c[1] - a[1]
    denom = rx * sy - ry * sx
    len_r = math.hypot(rx, ry)
    len_s = math.hypot(sx, sy)
    if abs(denom) <= 1e-12 * len_r * len_s:
        # Parallel.  Collinear iff c is on the ab line.
        if abs(qpx * ry - qpy * rx) > 1e-9 * len_r * max(len_s, math.hypot(qpx, qpy), 1.0):
            return None
        # Collinear: measure the 1-D overlap along ab.
        t0 = (qpx * rx + qpy * ry) / (len_r * len_r)
        t1 = ((d[0] - a[0]) * rx + (d[1] - a[1]) * ry) / (len_r * len_r)
        lo, hi = min(t0, t1), max(t0, t1)
        overlap = (min(hi, 1.0) - max(lo, 0.0)) * len_r
        if overlap > MERGE_EPS:
            return "overlap"
        return None  # disjoint, or touching in at most one point
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    eps = 1e-12
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        return "point", min(max(t, 0.0), 1.0), min(max(u, 0.0), 1.0)
    return None


def segment_intersection(a, b, c, d):
    """Single intersection point of segments ab and cd, or None.

    Collinear-overlapping segments yield None here; build_graph rejects
    them as a model defect before this matters.
    """
    hit = _intersect_params(a, b, c, d)
    if hit is None or hit == "overlap":
        return None
    _, t, _ = hit
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


class _VertexRegistry:
    """Assigns ids to points, merging anything within eps (Euclidean)."""

    def __init__(self, eps: float):
        self.eps = eps
        self.coords: list[tuple[float, float]] = []
        self._grid: dict[tuple[int, int], list[int]] = {}

    def get_or_add(self, x: float, y: float) -> int:
        eps = self.eps
        cx, cy = math.floor(x / eps), math.floor(y / eps)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for vid in self._grid.get((cx + dx, cy + dy), ()):
                    px, py = self.coords[vid]
                    if (px - x) ** 2 + (py - y) ** 2 <= eps * eps:
                        return vid
        vid = len(self.coords)
        self.coords.append((x, y))
        self._grid.setdefault((cx, cy), []).append(vid)
        return vid


def build_graph(model: StreetModel) -> StreetGraph:
    """Embed the model's chains as a planar graph with corner vertices."""
    scale = model.pixel_value
    segs = []  # (ax, ay, bx, by, street_index, chain_segment_index)
    for si, st in enumerate(model.streets):
        pts = [(x * scale, y * scale) for x, y in st.chain]
        for j in range(len(pts) - 1):
            (ax, ay), (bx, by) = pts[j], pts[j + 1]
            segs.append((ax, ay, bx, by, si, j))
    if not segs:
        raise GeometryError("model has no usable street segments")

    cuts: list[list[float]] = [[0.0, 1.0] for _ in segs]
    boxes = []
    for ax, ay, bx, by, _, _ in segs:
        boxes.append((min(ax, bx), min(ay, by), max(ax, bx), max(ay, by)))

    eps = MERGE_EPS
    for i in range(len(segs)):
        ax, ay, bx, by, si, _ = segs[i]
        ix0, iy0, ix1, iy1 = boxes[i]
        for j in range(i + 1, len(segs)):
            jx0, jy0, jx1, jy1 = boxes[j]
            if jx0 > ix1 + eps or jx1 < ix0 - eps or jy0 > iy1 + eps or jy1 < iy0 - eps:
                continue
            cx, cy, dx, dy, sj, _ = segs[j]
            hit = _intersect_params((ax, ay), (bx, by), (cx, cy), (dx, dy))
            if hit is None:
                continue
            if hit == "overlap":
                raise GeometryError(
                    "collinear overlapping segments between streets "
                    f"{model.streets[si].name!r} and {model.streets[sj].name!r}"
                )
            _, t, u = hit
            cuts[i].append(t)
            cuts[j].append(u)

    registry = _VertexRegistry(eps)
    edges: list[Edge] = []
    weights: list[float] = []
    for (ax, ay, bx, by, si, seg_idx), ts in zip(segs, cuts):
        seg_len = math.hypot(bx - ax, by - ay)
        ts = sorted(set(ts))
        # Drop parameter values closer than the merge tolerance.
        kept = [ts[0]]
        for t in ts[1:]:
            if (t - kept[-1]) * seg_len > eps:
                kept.append(t)
        ids = [
            registry.get_or_add(ax + t * (bx - ax), ay + t * (by - ay)) for t in kept
        ]
        for u, v in zip(ids, ids[1:]):
            if u == v:
                continue
            (ux, uy), (vx, vy) = registry.coords[u], registry.coords[v]
            w = math.hypot(vx - ux, vy - uy)
            edges.append(Edge(u=u, v=v, street=si, seg=seg_idx))
            weights.append(w)

    if not edges:
        raise GeometryError("degenerate model: no edges after splitting")
    return StreetGraph(vertices=registry.coords, edges=edges, edge_weight=weights)


def location_point(graph: StreetGraph, loc: DeliveryLocation) -> tuple[float, float]:
    """Planar position of a delivery location."""
    e = graph.edges[loc.edge]
    (ux, uy), (vx, vy) = graph.vertices[e.u], graph.vertices[e.v]
    a = loc.alpha
    return (a * ux + (1.0 - a) * vx, a * uy + (1.0 - a) * vy)


def attach_point(graph: StreetGraph, p: tuple[float, float]) -> DeliveryLocation:
    """Snap a free point to the closest edge; ties go to the lowest edge id."""
    px, py = p
    best_edge = -1
    best_d2 = math.inf
    best_alpha = 0.0
    for eid, e in enumerate(graph.edges):
        (ux, uy), (vx, vy) = graph.vertices[e.u], graph.vertices[e.v]
        dx, dy = vx - ux, vy - uy
        denom = dx * dx + dy * dy
        s = ((px - ux) * dx + (py - uy) * dy) / denom
        s = min(max(s, 0.0), 1.0)
        qx, qy = ux + s * dx, uy + s * dy
        d2 = (px - qx) ** 2 + (py - qy) ** 2
        if d2 < best_d2:
            best_d2 = d2
            best_edge = eid
            best_alpha = 1.0 - s
    return DeliveryLocation(edge=best_edge, alpha=best_alpha, side=SIDE_PLUS)


def format_graph_dump(graph: StreetGraph) -> str:
    """Debug listing: one V line per vertex, one E line per edge."""
    lines = []
    for vid, (x, y) in enumerate(graph.vertices):
        lines.append(f"V {vid} {x:.6f} {y:.6f}")
    for eid, (e, w) in enumerate(zip(graph.edges, graph.edge_weight)):
        lines.append(f"E {eid} {e.u} {e.v} {e.street} {w:.6f}")
    return "\n".join(lines) + "\n"
