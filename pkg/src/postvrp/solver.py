"""Baseline optimization: greedy construction, swap descent, exhaustive oracle.

The swap neighborhood works on the raw solution sequence, separators
included, so one swap can move a customer across routes or relocate a
route boundary.  Candidate swaps are scored incrementally through per-route
cached lengths; accepted swaps trigger an exact rebuild, so cached state
never drifts.  For large instances the candidate partners of a position
are restricted to the nearest deliveries by planar distance.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_left
from dataclasses import dataclass
from typing import NamedTuple

from .errors import SolverError
from .rng import Stream
from .solution import (
    DEPOT,
    ObjectiveVector,
    Solution,
    is_feasible,
    objectives,
    solution_from_routes,
)

EXHAUSTIVE_LIMIT = 10_000_000


@dataclass
class SearchConfig:
    mode: str = "lexicographic"  # or "scalarized"
    weights: tuple[float, float, float] = (1.0, 0.0, 0.0)
    max_passes: int = 64
    time_budget: float = 600.0
    seed: int = 0
    neighbor_limit: int = 32
    restricted_threshold: int = 10_000

    def __post_init__(self):
        if self.mode not in ("lexicographic", "scalarized"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "scalarized" and not any(w > 0 for w in self.weights):
            raise ValueError("scalarized mode needs at least one positive weight")
        if self.max_passes <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


class Metrics(NamedTuple):
    total_length: float
    route_count: int
    spread: float
    violations: int

    def vector(self) -> ObjectiveVector:
        return ObjectiveVector(self.total_length, self.route_count, self.spread)


@dataclass
class DescentStats:
    passes: int
    swaps: int
    evaluations: int
    elapsed: float
    timed_out: bool


def _key_fn(config: SearchConfig):
    if config.mode == "lexicographic":
        return lambda m: (m.route_count, m.total_length, m.spread)
    l1, l2, l3 = config.weights
    return lambda m: l1 * m.total_length + l2 * m.route_count + l3 * m.spread


class _SequenceState:
    """Sequence plus per-slot sizes/lengths, split at separator positions.

    Slots are the k segments between consecutive separators (virtual
    boundaries at -1 and m); empty slots have size 0 and length 0.  A
    candidate swap is scored without mutation; applying a swap rebuilds the
    slot arrays exactly.
    """

    def __init__(self, seq: list[int], oracle, max_route_length: float):
        self.seq = seq
        self.w = oracle.weight
        self.max_route_length = max_route_length
        self.pos_of: list[int] = []
        self.rebuild()

    def rebuild(self) -> None:
        seq = self.seq
        w = self.w
        m = len(seq)
        seps = [p for p, x in enumerate(seq) if x == DEPOT]
        bounds = [-1] + seps + [m]
        sizes: list[int] = []
        lengths: list[float] = []
        for t in range(len(bounds) - 1):
            lo, hi = bounds[t], bounds[t + 1]
            size = hi - lo - 1
            sizes.append(size)
            if size == 0:
                lengths.append(0.0)
                continue
            prev = seq[lo + 1]
            total = w(DEPOT, prev)
            for p in range(lo + 2, hi):
                total += w(prev, seq[p])
                prev = seq[p]
            total += w(prev, DEPOT)
            lengths.append(total)
        self.seps = seps
        self.bounds = bounds
        self.sizes = sizes
        self.lengths = lengths
        pos_of = [0] * (m + 2)
        for p, x in enumerate(seq):
            if x != DEPOT:
                pos_of[x] = p
        self.pos_of = pos_of

    def _metrics_of(self, sizes: list[int], lengths: list[float]) -> Metrics:
        total = 0.0
        count = 0
        violations = 0
        cap = self.max_route_length
        for sz, ln in zip(sizes, lengths):
            if sz > 0:
                total += ln
                count += 1
                if ln > cap:
                    violations += 1
        if count <= 1:
            spread = 0.0
        else:
            mean = total / count
            acc = 0.0
            for sz, ln in zip(sizes, lengths):
                if sz > 0:
                    acc += (ln - mean) ** 2
            spread = math.sqrt(acc / (count - 1))
        return Metrics(total, count, spread, violations)

    def metrics(self) -> Metrics:
        return self._metrics_of(self.sizes, self.lengths)

    def _slot_of(self, pos: int) -> int:
        return bisect_left(self.seps, pos)

    def eval_swap(self, i: int, j: int) -> Metrics:
        """Metrics after swapping positions i < j, without mutating."""
        seq = self.seq
        xi, xj = seq[i], seq[j]
        if xi != DEPOT and xj != DEPOT:
            return self._eval_customer_swap(i, j)
        if xi == DEPOT and xj == DEPOT:
            return self.metrics()
        return self._eval_boundary_swap(i, j)

    def _eval_customer_swap(self, i: int, j: int) -> Metrics:
        seq = self.seq
        m = len(seq)
        w = self.w
        xi, xj = seq[i], seq[j]

        def after(p: int) -> int:
            if p == i:
                return xj
            if p == j:
                return xi
            return seq[p] if 0 <= p < m else DEPOT

        def before(p: int) -> int:
            return seq[p] if 0 <= p < m else DEPOT

        new_lengths = list(self.lengths)
        adjacencies = {i - 1, i, j - 1, j}
        for p in adjacencies:
            old_a, old_b = before(p), before(p + 1)
            new_a, new_b = after(p), after(p + 1)
            if old_a == new_a and old_b == new_b:
                continue
            delta = w(new_a, new_b) - w(old_a, old_b)
            if old_a != DEPOT:
                slot = self._slot_of(p)
            elif old_b != DEPOT:
                slot = self._slot_of(p + 1)
            else:
                continue
            new_lengths[slot] += delta
        return self._metrics_of(self.sizes, new_lengths)

    def _eval_boundary_swap(self, i: int, j: int) -> Metrics:
        seq = self.seq
        w = self.w
        if seq[i] == DEPOT:
            p_s, p_c = i, j
        else:
            p_s, p_c = j, i
        customer = seq[p_c]
        lo, hi = (i, j) if i < j else (j, i)
        window_left = max(b for b in self.bounds if b < lo and b != p_s)
        window_right = min(b for b in self.bounds if b > hi and b != p_s)
        t0 = bisect_left(self.bounds, window_left)
        t1 = bisect_left(self.bounds, window_right) - 1

        new_sizes: list[int] = []
        new_lengths: list[float] = []
        cur_len = 0.0
        cur_size = 0
        prev = DEPOT
        for p in range(window_left + 1, window_right):
            if p == p_c:
                x = DEPOT
            elif p == p_s:
                x = customer
            else:
                x = seq[p]
            if x == DEPOT:
                new_sizes.append(cur_size)
                new_lengths.append(cur_len + (w(prev, DEPOT) if cur_size else 0.0))
                cur_len = 0.0
                cur_size = 0
                prev = DEPOT
            else:
                cur_len += w(prev, x)
                prev = x
                cur_size += 1
        new_sizes.append(cur_size)
        new_lengths.append(cur_len + (w(prev, DEPOT) if cur_size else 0.0))

        sizes = self.sizes[:t0] + new_sizes + self.sizes[t1 + 1 :]
        lengths = self.lengths[:t0] + new_lengths + self.lengths[t1 + 1 :]
        return self._metrics_of(sizes, lengths)

    def apply_swap(self, i: int, j: int) -> None:
        self.seq[i], self.seq[j] = self.seq[j], self.seq[i]
        self.rebuild()


def _neighbor_ids(oracle, limit: int):
    """Per-delivery list of nearest delivery ids by planar distance."""
    from scipy.spatial import cKDTree

    from .geometry import location_point

    points = [location_point(oracle.graph, d) for d in oracle.deliveries]
    tree = cKDTree(points)
    k = min(limit + 1, len(points))
    _, idx = tree.query(points, k=k)
    out = []
    for d, row in enumerate(idx):
        out.append([int(x) for x in row if int(x) != d][:limit])
    return out


def swap_descent(
    sol: Solution, oracle, max_route_length: float, config: SearchConfig | None = None
) -> tuple[Solution, DescentStats]:
    """First-improvement swap descent; never worsens the key, never breaks
    feasibility of a feasible input."""
    config = config or SearchConfig()
    key_of = _key_fn(config)
    state = _SequenceState(list(sol.seq), oracle, max_route_length)
    cur_key = key_of(state.metrics())
    feasible = state.metrics().violations == 0
    m = len(state.seq)

    restricted = sol.n >= config.restricted_threshold and hasattr(oracle, "graph")
    neighbors = _neighbor_ids(oracle, config.neighbor_limit) if restricted else None

    t0 = time.perf_counter()
    passes = 0
    swaps = 0
    evaluations = 0
    timed_out = False
    while passes < config.max_passes and not timed_out:
        passes += 1
        improved = False
        for i in range(m):
            if time.perf_counter() - t0 > config.time_budget:
                timed_out = True
                break
            xi = state.seq[i]
            if restricted:
                if xi == DEPOT:
                    continue
                cand = set()
                for d in neighbors[xi]:
                    if d == DEPOT:
                        cand.update(state.seps)
                    else:
                        cand.add(state.pos_of[d])
                cand.discard(i)
                js = sorted(cand)
            else:
                js = range(i + 1, m)
            for j in js:
                if xi == DEPOT and state.seq[j] == DEPOT:
                    continue
                a, b = (i, j) if i < j else (j, i)
                cand_metrics = state.eval_swap(a, b)
                evaluations += 1
                new_key = key_of(cand_metrics)
                if new_key < cur_key and (not feasible or cand_metrics.violations == 0):
                    state.apply_swap(a, b)
                    cur_key = new_key
                    feasible = cand_metrics.violations == 0
                    swaps += 1
                    improved = True
                    break
        if not improved and not timed_out:
            break

    out = Solution(seq=tuple(state.seq), n=sol.n, k=sol.k)
    stats = DescentStats(
        passes=passes,
        swaps=swaps,
        evaluations=evaluations,
        elapsed=time.perf_counter() - t0,
        timed_out=timed_out,
    )
    return out, stats


def greedy_construct(
    oracle, n: int, k: int, max_route_length: float, config: SearchConfig | None = None
) -> tuple[Solution, bool]:
    """Feasible-first nearest-neighbor construction.

    Opens a new route when the nearest unvisited customer no longer fits;
    returns (solution, False) when some customer cannot fit anywhere or the
    fleet runs out, with the remainder packed best-effort.
    """
    if n < 1:
        raise ValueError("need at least one customer")
    config = config or SearchConfig()
    stream = Stream(config.seed)
    w = oracle.weight

    def nearest(cur: int, cands) -> int:
        best_w = math.inf
        best: list[int] = []
        for c in cands:
            d = w(cur, c)
            if d < best_w:
                best_w = d
                best = [c]
            elif d == best_w:
                best.append(c)
        if len(best) == 1:
            return best[0]
        return best[stream.u64() % len(best)]

    unvisited = list(range(1, n + 1))
    routes: list[list[int]] = []
    feasible = True
    while unvisited:
        if len(routes) == k:
            feasible = False
            cur = routes[-1][-1]
            while unvisited:
                c = nearest(cur, unvisited)
                routes[-1].append(c)
                unvisited.remove(c)
                cur = c
            break
        route: list[int] = []
        cur = DEPOT
        outbound = 0.0
        while unvisited:
            c = nearest(cur, unvisited)
            extended = outbound + w(cur, c) + w(c, DEPOT)
            if route and extended > max_route_length:
                break
            if not route and extended > max_route_length:
                feasible = False  # cannot fit even alone; isolate it
                route = [c]
                unvisited.remove(c)
                break
            route.append(c)
            unvisited.remove(c)
            outbound += w(cur, c)
            cur = c
        routes.append(route)
    return solution_from_routes(routes, n, k), feasible


@dataclass
class ExhaustiveResult:
    best: Solution | None
    best_key: object
    best_vector: ObjectiveVector | None
    pareto: list[ObjectiveVector]
    feasible_count: int
    enumerated: int


def _next_permutation(seq: list[int]) -> bool:
    """Advance to the next lexicographic permutation in place."""
    i = len(seq) - 2
    while i >= 0 and seq[i] >= seq[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(seq) - 1
    while seq[j] <= seq[i]:
        j -= 1
    seq[i], seq[j] = seq[j], seq[i]
    seq[i + 1 :] = reversed(seq[i + 1 :])
    return True


def _evaluate_sequence(seq, W, max_route_length):
    lengths = []
    cur = 0.0
    prev = 0
    size = 0
    for x in seq:
        if x:
            cur += W[prev][x]
            prev = x
            size += 1
        else:
            if size:
                cur += W[prev][0]
                lengths.append(cur)
                cur = 0.0
                prev = 0
                size = 0
    if size:
        cur += W[prev][0]
        lengths.append(cur)
    total = 0.0
    violations = 0
    for ln in lengths:
        total += ln
        if ln > max_route_length:
            violations += 1
    count = len(lengths)
    if count <= 1:
        spread = 0.0
    else:
        mean = total / count
        spread = math.sqrt(sum((ln - mean) ** 2 for ln in lengths) / (count - 1))
    return Metrics(total, count, spread, violations)


def _pareto_front(vectors) -> list[ObjectiveVector]:
    """Non-dominated subset of (total_length, route_count, spread) triples."""
    unique = set(vectors)
    by_count: dict[int, list] = {}
    for v in unique:
        by_count.setdefault(v[1], []).append(v)

    def staircase(points):
        points = sorted(points)
        front = []
        best = math.inf
        for f1, f3 in points:
            if f3 < best:
                front.append((f1, f3))
                best = f3
        return front

    survivors = []
    merged: list[tuple[float, float]] = []  # staircase over all lower route counts
    for count in sorted(by_count):
        layer = sorted(by_count[count], key=lambda v: (v[0], v[2]))
        best = math.inf
        layer_front = []
        for v in layer:
            if v[2] < best:
                layer_front.append(v)
                best = v[2]
        for v in layer_front:
            # merged is sorted by f1 with strictly decreasing f3; any point
            # with f1 <= v.f1 has its minimum f3 at the deepest prefix entry.
            lo, hi = 0, len(merged)
            while lo < hi:
                mid = (lo + hi) // 2
                if merged[mid][0] <= v[0]:
                    lo = mid + 1
                else:
                    hi = mid
            if lo > 0 and merged[lo - 1][1] <= v[2]:
                continue  # dominated by a solution with fewer routes
            survivors.append(ObjectiveVector(*v))
        merged = staircase(merged + [(v[0], v[2]) for v in layer_front])
    survivors.sort(key=lambda v: (v.route_count, v.total_length, v.spread))
    return survivors


def exhaustive_optimum(
    oracle,
    n: int,
    k: int,
    max_route_length: float,
    config: SearchConfig | None = None,
) -> ExhaustiveResult:
    """Enumerate every distinct solution sequence; only viable for tiny inputs."""
    config = config or SearchConfig()
    distinct = math.factorial(n + k - 1) // math.factorial(k - 1)
    if distinct > EXHAUSTIVE_LIMIT:
        raise SolverError(
            f"{distinct} distinct sequences exceed the exhaustive limit of {EXHAUSTIVE_LIMIT}"
        )
    key_of = _key_fn(config)
    W = [[oracle.weight(a, b) for b in range(n + 1)] for a in range(n + 1)]

    seq = [DEPOT] * (k - 1) + list(range(1, n + 1))
    best_seq = None
    best_key = None
    best_vec = None
    feasible_vectors = []
    enumerated = 0
    while True:
        enumerated += 1
        metrics = _evaluate_sequence(seq, W, max_route_length)
        if metrics.violations == 0:
            vec = metrics.vector()
            feasible_vectors.append(vec)
            key = key_of(metrics)
            if best_key is None or key < best_key:
                best_key = key
                best_seq = tuple(seq)
                best_vec = vec
        if not _next_permutation(seq):
            break

    best = Solution(seq=best_seq, n=n, k=k) if best_seq is not None else None
    return ExhaustiveResult(
        best=best,
        best_key=best_key,
        best_vector=best_vec,
        pareto=_pareto_front(feasible_vectors),
        feasible_count=len(feasible_vectors),
        enumerated=enumerated,
    )


@dataclass
class SolveResult:
    solution: Solution
    vector: ObjectiveVector
    feasible: bool
    stats: DescentStats


def solve(
    oracle, n: int, k: int, max_route_length: float, config: SearchConfig | None = None
) -> SolveResult:
    """Greedy construction followed by swap descent."""
    config = config or SearchConfig()
    start, _ = greedy_construct(oracle, n, k, max_route_length, config)
    sol, stats = swap_descent(start, oracle, max_route_length, config)
    vec = objectives(sol, oracle)
    feasible, _ = is_feasible(sol, oracle, max_route_length, k)
    return SolveResult(solution=sol, vector=vec, feasible=feasible, stats=stats)
