"""Solution encoding, route partition and the three objectives.

A solution is one permutation of the n customer ids plus k-1 copies of the
depot id 0, which act as route separators.  Splitting at separators and
dropping empty segments yields the routes; by convention w(0, 0) = 0, so
the whole-sequence length equals the sum of the route lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

DEPOT = 0


@dataclass(frozen=True)
class Solution:
    seq: tuple[int, ...]
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a solution needs at least one customer")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.seq) != self.n + self.k - 1:
            raise ValueError(
                f"sequence length {len(self.seq)} != n + k - 1 = {self.n + self.k - 1}"
            )
        seen = set()
        separators = 0
        for x in self.seq:
            if x == DEPOT:
                separators += 1
            elif 1 <= x <= self.n:
                if x in seen:
                    raise ValueError(f"customer {x} appears twice")
                seen.add(x)
            else:
                raise ValueError(f"invalid element {x}")
        if separators != self.k - 1:
            raise ValueError(f"expected {self.k - 1} separators, found {separators}")


class ObjectiveVector(NamedTuple):
    total_length: float
    route_count: int
    spread: float


def partition(sol: Solution) -> list[list[int]]:
    """Non-empty routes of the solution, in sequence order."""
    routes: list[list[int]] = []
    current: list[int] = []
    for x in sol.seq:
        if x == DEPOT:
            if current:
                routes.append(current)
                current = []
        else:
            current.append(x)
    if current:
        routes.append(current)
    return routes


def route_length(route: list[int], oracle) -> float:
    """Out from the depot, through the route, and back."""
    total = oracle.weight(DEPOT, route[0])
    for a, b in zip(route, route[1:]):
        total += oracle.weight(a, b)
    total += oracle.weight(route[-1], DEPOT)
    return total


def objectives(sol: Solution, oracle) -> ObjectiveVector:
    lengths = [route_length(r, oracle) for r in partition(sol)]
    count = len(lengths)
    total = sum(lengths)
    if count <= 1:
        spread = 0.0
    else:
        mean = total / count
        spread = math.sqrt(sum((x - mean) ** 2 for x in lengths) / (count - 1))
    return ObjectiveVector(total_length=total, route_count=count, spread=spread)


def is_feasible(sol: Solution, oracle, max_route_length: float, k: int) -> tuple[bool, int | None]:
    """(True, None) if every route fits in max_route_length, else (False, index)."""
    routes = partition(sol)
    if len(routes) > k:
        return False, None
    for idx, route in enumerate(routes):
        if route_length(route, oracle) > max_route_length:
            return False, idx
    return True, None


def solution_from_routes(routes: list[list[int]], n: int, k: int) -> Solution:
    """Join routes with separators, padding unused separators at the end."""
    seq: list[int] = []
    for i, route in enumerate(routes):
        if i > 0:
            seq.append(DEPOT)
        seq.extend(route)
    seq.extend([DEPOT] * (k - 1 - (len(routes) - 1)))
    return Solution(seq=tuple(seq), n=n, k=k)


def format_solution(sol: Solution) -> str:
    tokens = " ".join("pi" if x == DEPOT else str(x) for x in sol.seq)
    return f"{sol.k} {sol.n}\n{tokens}\n"


def parse_solution(text: str) -> Solution:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValueError("solution file needs a header line and a sequence line")
    k_str, n_str = lines[0].split()
    k, n = int(k_str), int(n_str)
    seq = tuple(DEPOT if tok == "pi" else int(tok) for tok in lines[1].split())
    return Solution(seq=seq, n=n, k=k)
