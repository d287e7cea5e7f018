"""Synthetic benchmark graphs with power-law degrees, power-law community
sizes, and a tunable mixing parameter.

The generator is a planted-partition configuration model: it samples a
degree sequence and community sizes, splits each node's stubs into an
internal part (about ``1 - mu`` of its degree, unbiased stochastic
rounding) and an external part, wires internal stubs inside each community
and external stubs across communities, then repairs self-loops and
duplicate edges by re-pairing the offending stubs. A generation attempt is
rejected unless the measured mixing lands within 0.05 of the target and no
node is left isolated; up to ten attempts are made per seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .community import estimate_mixing
from .errors import BudgetError, FeasibilityError
from .graphs import Graph, Partition

MIXING_TOLERANCE = 0.05
GENERATION_ATTEMPTS = 10
_REPAIR_ROUNDS = 60


@dataclass(frozen=True)
class LfrParams:
    """Benchmark parameters.

    ``avg_degree`` is hit by tuning the minimum degree of the truncated
    power law (see ``solve_min_degree``); ``mu`` is the target fraction of
    edge endpoints leaving their community.
    """

    n: int
    avg_degree: float
    max_degree: int
    mu: float
    degree_exponent: float = 3.0
    community_exponent: float = 2.5
    community_size_range: tuple[int, int] = (50, 250)
    rng_seed: int = 0

    def __post_init__(self):
        smin, smax = self.community_size_range
        if self.n < 1:
            raise ValueError("n must be positive")
        if smin > smax or smin < 1:
            raise ValueError(f"invalid community size range [{smin}, {smax}]")
        if self.degree_exponent < 2:
            raise ValueError("degree exponent must be at least 2")
        if self.community_exponent <= 1:
            raise ValueError("community size exponent must exceed 1")
        if not 0 <= self.mu < 1:
            raise ValueError(f"mu must be in [0, 1), got {self.mu}")
        if not 0 < self.avg_degree < self.max_degree:
            raise ValueError("average degree must be positive and below the maximum degree")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be non-negative")


def sample_truncated_power_law(
    exponent: float, lo: int, hi: int, count: int, rng: np.random.Generator
) -> np.ndarray:
    """I.i.d. integer samples with probability proportional to x**(-exponent)
    on [lo, hi]."""
    if lo > hi:
        raise ValueError(f"empty support [{lo}, {hi}]")
    if exponent <= 1:
        raise ValueError("exponent must exceed 1")
    values = np.arange(lo, hi + 1, dtype=np.int64)
    weights = values.astype(float) ** (-exponent)
    return rng.choice(values, size=count, p=weights / weights.sum())


def truncated_power_law_mean(exponent: float, lo: int, hi: int) -> float:
    values = np.arange(lo, hi + 1, dtype=np.int64).astype(float)
    weights = values ** (-exponent)
    return float((values * weights).sum() / weights.sum())


def solve_min_degree(exponent: float, max_degree: int, target_mean: float) -> int:
    """Smallest-support tuning of the degree law: the integer minimum degree
    whose truncated power-law mean is closest to the target.

    The truncated mean is increasing in the minimum, so a bisection locates
    the crossover and the closer of its two neighbors wins (ties go low).
    """
    if not 0 < target_mean < max_degree:
        raise ValueError("target mean must lie strictly between 0 and the maximum degree")
    lo, hi = 1, max_degree
    if truncated_power_law_mean(exponent, lo, max_degree) >= target_mean:
        return 1
    while hi - lo > 1:  # invariant: mean(lo) < target <= mean(hi)
        mid = (lo + hi) // 2
        if truncated_power_law_mean(exponent, mid, max_degree) >= target_mean:
            hi = mid
        else:
            lo = mid
    below = abs(truncated_power_law_mean(exponent, lo, max_degree) - target_mean)
    above = abs(truncated_power_law_mean(exponent, hi, max_degree) - target_mean)
    return lo if below <= above else hi


def generate(params: LfrParams) -> tuple[Graph, Partition]:
    """Generate a benchmark graph and its ground-truth partition."""
    smin, smax = params.community_size_range
    if params.n < smin:
        raise FeasibilityError(
            f"n={params.n} cannot host a community of minimum size {smin}"
        )
    worst_internal = math.floor((1.0 - params.mu) * params.max_degree)
    if (1.0 - params.mu) * params.max_degree > worst_internal:
        worst_internal += 1  # stochastic rounding may round up
    if worst_internal > smax - 1:
        raise FeasibilityError(
            f"maximum community size {smax} cannot host an internal degree of {worst_internal}"
        )
    min_degree = solve_min_degree(params.degree_exponent, params.max_degree, params.avg_degree)
    for attempt in range(GENERATION_ATTEMPTS):
        rng = np.random.default_rng(np.random.SeedSequence([params.rng_seed, attempt]))
        result = _attempt(params, min_degree, rng)
        if result is not None:
            return result
    raise BudgetError(
        f"benchmark generation failed {GENERATION_ATTEMPTS} attempts to land within "
        f"{MIXING_TOLERANCE} of mu={params.mu} with no isolated nodes"
    )


def _attempt(params: LfrParams, min_degree: int, rng: np.random.Generator):
    n = params.n
    smin, smax = params.community_size_range

    degrees = sample_truncated_power_law(
        params.degree_exponent, min_degree, params.max_degree, n, rng
    )
    if degrees.sum() % 2 == 1:
        bumpable = np.flatnonzero(degrees < params.max_degree)
        degrees[bumpable[0] if bumpable.size else 0] += 1

    sizes = _community_sizes(params, rng)
    if sizes is None:
        return None

    internal = np.floor((1.0 - params.mu) * degrees).astype(np.int64)
    frac = (1.0 - params.mu) * degrees - internal
    internal += rng.random(n) < frac
    internal = np.minimum(internal, degrees)

    assign = _assign_communities(internal, sizes, rng)
    if assign is None:
        return None

    # internal stub sums must be even per community; shift the largest
    # holder's spare stub outward (or drop it entirely when mu == 0 so the
    # graph stays fully internal)
    for c in range(len(sizes)):
        members = np.flatnonzero(assign == c)
        if internal[members].sum() % 2 == 1:
            holder = members[int(np.argmax(internal[members]))]
            internal[holder] -= 1
            if params.mu == 0:
                degrees[holder] -= 1

    external = degrees - internal
    edges: set[tuple[int, int]] = set()
    for c in range(len(sizes)):
        members = np.flatnonzero(assign == c)
        stubs = np.repeat(members, internal[members])
        _match_stubs(stubs, rng, edges, reject=None)

    ext_stubs = np.repeat(np.arange(n), external)
    leftover = _match_stubs(
        ext_stubs, rng, edges, reject=lambda a, b: assign[a] == assign[b]
    )
    if leftover.size:
        _match_stubs(leftover, rng, edges, reject=None)

    g = Graph.from_edges(n, edges)
    if np.any(g.degrees == 0):
        return None
    part = Partition.from_assignment(assign)
    measured = estimate_mixing(g, part)
    if abs(measured - params.mu) > MIXING_TOLERANCE:
        return None
    return g, part


def _community_sizes(params: LfrParams, rng: np.random.Generator):
    """Sample sizes until they cover n, then trim or redistribute so they sum
    to exactly n while staying inside the requested range."""
    n = params.n
    smin, smax = params.community_size_range
    sizes: list[int] = []
    total = 0
    while total < n:
        for s in sample_truncated_power_law(params.community_exponent, smin, smax, 8, rng):
            if total >= n:
                break
            sizes.append(int(s))
            total += int(s)
    excess = total - n
    if excess > 0:
        if sizes[-1] - excess >= smin:
            sizes[-1] -= excess
        else:
            deficit = n - (total - sizes.pop())
            guard = 0
            while deficit > 0:
                room = [k for k, s in enumerate(sizes) if s < smax]
                if not room or guard > n:
                    return None
                guard += 1
                for k in room:
                    if deficit == 0:
                        break
                    sizes[k] += 1
                    deficit -= 1
    return np.asarray(sizes, dtype=np.int64)


def _assign_communities(internal, sizes, rng: np.random.Generator):
    """Place nodes, largest internal degree first, into a uniformly random
    community that still has room and is large enough to host that degree."""
    n = internal.size
    order = np.argsort(-internal, kind="stable")
    free = sizes.copy()
    assign = np.full(n, -1, dtype=np.int64)
    for node in order:
        eligible = np.flatnonzero((free > 0) & (sizes - 1 >= internal[node]))
        if eligible.size == 0:
            return None
        c = int(eligible[rng.integers(eligible.size)])
        assign[node] = c
        free[c] -= 1
    return assign


def _match_stubs(stubs, rng: np.random.Generator, edges: set, reject) -> np.ndarray:
    """Randomly pair stubs into new simple edges.

    Pairs that would form a self-loop, duplicate an existing edge, or hit
    the ``reject`` predicate are thrown back and re-shuffled; whatever
    cannot be placed within the round budget is returned to the caller.
    """
    pool = np.asarray(stubs, dtype=np.int64)
    for _ in range(_REPAIR_ROUNDS):
        if pool.size < 2:
            break
        pool = pool[rng.permutation(pool.size)]
        leftover = []
        for a, b in zip(pool[0::2], pool[1::2]):
            a, b = int(a), int(b)
            key = (a, b) if a < b else (b, a)
            if a == b or key in edges or (reject is not None and reject(a, b)):
                leftover.append(a)
                leftover.append(b)
            else:
                edges.add(key)
        if pool.size % 2:
            leftover.append(int(pool[-1]))
        if not leftover:
            return np.empty(0, dtype=np.int64)
        pool = np.asarray(leftover, dtype=np.int64)
    return pool
