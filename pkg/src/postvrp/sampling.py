"""Delivery generation: edge probabilities and the seeded sampling loop.

Every delivery consumes exactly three PRNG draws (edge, alpha, side), so
delivery i depends only on the seed and i.  Generating n then truncating
to the first m customers equals generating m directly.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import ModelError
from .geometry import SIDE_MINUS, SIDE_PLUS, DeliveryLocation, StreetGraph
from .model import StreetModel, density
from .rng import Stream


@dataclass(frozen=True)
class EdgeProbabilityTable:
    """Cumulative edge selection probabilities in canonical edge order.

    ``cumulative[i]`` is the upper bound of edge i's half-open interval
    [cumulative[i-1], cumulative[i]); ``total`` is the un-normalized mass
    sum(density(street(e)) * w'(e)).
    """

    cumulative: tuple[float, ...]
    total: float

    def probability(self, edge: int) -> float:
        lo = self.cumulative[edge - 1] if edge > 0 else 0.0
        return self.cumulative[edge] - lo

    def pick(self, r: float) -> int:
        """Edge whose interval contains r; r >= 1 clamps to the last edge."""
        i = bisect_right(self.cumulative, r)
        return min(i, len(self.cumulative) - 1)


@dataclass(frozen=True)
class DeliverySet:
    """Depot (index 0) followed by n customer locations."""

    deliveries: tuple[DeliveryLocation, ...]

    @property
    def n(self) -> int:
        return len(self.deliveries) - 1

    @property
    def depot(self) -> DeliveryLocation:
        return self.deliveries[0]


def edge_probabilities(model: StreetModel, graph: StreetGraph) -> EdgeProbabilityTable:
    densities = [density(model, st) for st in model.streets]
    masses = [densities[e.street] * w for e, w in zip(graph.edges, graph.edge_weight)]
    total = sum(masses)
    if total <= 0.0:
        raise ModelError("degenerate probability mass: every street has zero density")
    cumulative = []
    acc = 0.0
    for m in masses:
        acc += m / total
        cumulative.append(acc)
    return EdgeProbabilityTable(cumulative=tuple(cumulative), total=total)


def sample_deliveries(
    graph: StreetGraph,
    table: EdgeProbabilityTable,
    n: int,
    seed: int,
    depot: DeliveryLocation,
) -> DeliverySet:
    """Draw n customer locations and prepend the depot."""
    if n < 0:
        raise ValueError("n must be >= 0")
    stream = Stream(seed)
    out = [depot]
    for _ in range(n):
        edge = table.pick(stream.unit())
        alpha = stream.unit()
        side = SIDE_PLUS if stream.unit() < 0.5 else SIDE_MINUS
        out.append(DeliveryLocation(edge=edge, alpha=alpha, side=side))
    return DeliverySet(deliveries=tuple(out))
