"""Pairwise delivery weights without materializing an n x n matrix.

Same-edge pairs use the closed form |alpha_a - alpha_b| * w'(e).  Pairs on
different edges decompose through the four endpoint combinations over a
cached vertex-to-vertex shortest-path table; with the affine offsets
((1-alpha) * w' to u, alpha * w' to v) this equals a shortest path on the
graph augmented with the two delivery vertices, at O(1) per query after
the one-off cache build.  Both cases add the street-crossing cost (charged
only for opposite sides of the same street) and the fixed per-delivery
cost.  Triangle inequality is NOT guaranteed: crossing costs and the fixed
cost can break it, so consumers must not assume metric inputs.
"""

from __future__ import annotations

import heapq
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .errors import PostVRPError, UnreachableError
from .geometry import DeliveryLocation, StreetGraph
from .model import StreetModel, crossing_width
from .sampling import DeliverySet

MATRIX_EXPORT_CAP = 12_000


def dijkstra(graph: StreetGraph, source: int) -> list[float]:
    """Single-source shortest path distances; unreachable vertices get inf."""
    adj = graph.adjacency()
    dist = [math.inf] * len(graph.vertices)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def cross_cost(
    graph: StreetGraph, model: StreetModel, a: DeliveryLocation, b: DeliveryLocation
) -> float:
    """Street-crossing cost: the street width iff same street, opposite sides."""
    sa = graph.edges[a.edge].street
    sb = graph.edges[b.edge].street
    if sa == sb and a.side != b.side:
        return crossing_width(model, model.streets[sa])
    return 0.0


class DistanceOracle:
    """Serves w(a, b) for all delivery pairs of one instance.

    The cache holds shortest-path distances from every vertex incident to a
    delivery-bearing edge to all vertices.  Queries are O(1); memory is
    O(|sources| * |V|).
    """

    def __init__(self, graph: StreetGraph, deliveries: DeliverySet, model: StreetModel):
        self.graph = graph
        self.deliveries = deliveries.deliveries
        self.beta = model.beta
        self._street_width = [crossing_width(model, st) for st in model.streets]
        self._cache: dict[tuple[int, int], float] = {}

        n_vertices = len(graph.vertices)
        used_edges = sorted({d.edge for d in self.deliveries})
        sources = sorted(
            {graph.edges[e].u for e in used_edges} | {graph.edges[e].v for e in used_edges}
        )
        self._row = {v: i for i, v in enumerate(sources)}

        # Parallel edges must keep the lighter weight; csr_matrix would sum them.
        lightest: dict[tuple[int, int], float] = {}
        for e, w in zip(graph.edges, graph.edge_weight):
            for key in ((e.u, e.v), (e.v, e.u)):
                if key not in lightest or w < lightest[key]:
                    lightest[key] = w
        rows = np.fromiter((k[0] for k in lightest), dtype=np.int64, count=len(lightest))
        cols = np.fromiter((k[1] for k in lightest), dtype=np.int64, count=len(lightest))
        data = np.fromiter(lightest.values(), dtype=np.float64, count=len(lightest))
        adjacency = csr_matrix((data, (rows, cols)), shape=(n_vertices, n_vertices))
        if sources:
            self._vertex_dist = _csgraph_dijkstra(adjacency, directed=False, indices=sources)
        else:
            self._vertex_dist = np.zeros((0, n_vertices))

    @property
    def n(self) -> int:
        return len(self.deliveries) - 1

    def vertex_distance(self, u: int, v: int) -> float:
        return float(self._vertex_dist[self._row[u], v])

    def weight(self, a: int, b: int) -> float:
        """w(a, b); a and b are delivery indices (0 is the depot)."""
        if a == b:
            return 0.0
        key = (a, b) if a < b else (b, a)
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        da = self.deliveries[a]
        db = self.deliveries[b]
        ea = self.graph.edges[da.edge]
        eb = self.graph.edges[db.edge]
        cross = (
            self._street_width[ea.street]
            if ea.street == eb.street and da.side != db.side
            else 0.0
        )
        wa = self.graph.edge_weight[da.edge]
        if da.edge == db.edge:
            w = abs(da.alpha - db.alpha) * wa + cross + self.beta
        else:
            wb = self.graph.edge_weight[db.edge]
            row_u = self._vertex_dist[self._row[ea.u]]
            row_v = self._vertex_dist[self._row[ea.v]]
            off_au = (1.0 - da.alpha) * wa
            off_av = da.alpha * wa
            off_bu = (1.0 - db.alpha) * wb
            off_bv = db.alpha * wb
            path = min(
                off_au + row_u[eb.u] + off_bu,
                off_au + row_u[eb.v] + off_bv,
                off_av + row_v[eb.u] + off_bu,
                off_av + row_v[eb.v] + off_bv,
            )
            if math.isinf(path):
                raise UnreachableError(f"no path between deliveries {a} and {b}")
            w = float(path) + cross + self.beta
        self._cache[key] = w
        return w


class MatrixOracle:
    """Weight lookups backed by a dense matrix (e.g. a parsed export)."""

    def __init__(self, matrix):
        self.matrix = matrix

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    def weight(self, a: int, b: int) -> float:
        return self.matrix[a][b]


def export_matrix(oracle, precision: int, cap: int = MATRIX_EXPORT_CAP) -> str:
    """Full symmetric weight matrix as text: a count line, then one row per line."""
    m = oracle.n + 1
    if m > cap:
        raise PostVRPError(
            f"matrix export of {m} deliveries exceeds the cap of {cap}; "
            "query the distance oracle instead"
        )
    values = [[0.0] * m for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            w = oracle.weight(a, b)
            values[a][b] = w
            values[b][a] = w
    lines = [str(m)]
    for row in values:
        lines.append(" ".join(f"{w:.{precision}f}" for w in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> list[list[float]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = int(lines[0])
    rows = [[float(tok) for tok in ln.split()] for ln in lines[1 : m + 1]]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise PostVRPError("malformed matrix file")
    return rows
