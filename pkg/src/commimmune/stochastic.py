"""Random-walk immunization baselines: acquaintance, community bridge
finder, and bridge-hub detector.

Each strategy returns its targets in selection order, so any prefix of the
result is exactly the selection a lower coverage would have produced with
the same seed. Walks are self-avoiding; a walk that dead-ends or hits its
step cap without confirming a target falls back to the node it stopped on,
which keeps the strategies total on graphs without community structure.
"""

from __future__ import annotations

import random

from .epidemic import coverage_count
from .errors import BudgetError
from .graphs import Graph

WALK_STEP_FACTOR = 100  # per-walk step cap = factor * node_count
WALKS_PER_TARGET = 1000  # restart budget per requested target


def _target_count(g: Graph, coverage: float) -> int:
    if not 0 < coverage <= 1:
        raise ValueError(f"coverage must be in (0, 1], got {coverage}")
    if g.edge_count == 0:
        raise ValueError("stochastic strategies need a graph with at least one edge")
    return coverage_count(g.node_count, coverage)


def acquaintance(g: Graph, coverage: float, rng_seed: int) -> list[int]:
    """Immunize a random neighbor of a uniformly chosen node, repeatedly.

    Duplicate picks are re-drawn; start nodes are drawn with replacement.
    """
    target = _target_count(g, coverage)
    rng = random.Random(rng_seed)
    n = g.node_count
    budget = WALKS_PER_TARGET * target
    chosen: list[int] = []
    seen: set[int] = set()
    attempts = 0
    while len(chosen) < target:
        if attempts >= budget:
            raise BudgetError(
                f"acquaintance exhausted its budget of {budget} draws "
                f"before reaching {target} distinct targets"
            )
        attempts += 1
        u = rng.randrange(n)
        nbrs = g.neighbors(u)
        if nbrs.size == 0:
            continue
        v = int(nbrs[rng.randrange(nbrs.size)])
        if v not in seen:
            seen.add(v)
            chosen.append(v)
    return chosen


def cbf(g: Graph, coverage: float, rng_seed: int) -> list[int]:
    """Community bridge finder: random walks that immunize the node just
    before a suspected community crossing.

    The node reached at step i (i >= 2) flags its predecessor as a potential
    bridge when it has at most one edge back into the walk history (the
    arrival edge); two probe neighbors with no links back confirm it.
    """
    target = _target_count(g, coverage)
    rng = random.Random(rng_seed)
    step_cap = WALK_STEP_FACTOR * g.node_count
    budget = WALKS_PER_TARGET * target
    chosen: list[int] = []
    seen: set[int] = set()
    walks = 0
    while len(chosen) < target:
        if walks >= budget:
            raise BudgetError(
                f"cbf exhausted its budget of {budget} walks before reaching {target} targets"
            )
        walks += 1
        found = _cbf_walk(g, rng, step_cap)
        if found not in seen:
            seen.add(found)
            chosen.append(found)
    return chosen


def _cbf_walk(g: Graph, rng: random.Random, step_cap: int) -> int:
    """One walk; returns a confirmed bridge or, failing that, the last node."""
    cur = rng.randrange(g.node_count)
    visited = {cur}
    hops = 0
    for _ in range(step_cap):
        options = [int(v) for v in g.neighbors(cur) if int(v) not in visited]
        if not options:
            return cur
        nxt = options[rng.randrange(len(options))]
        hops += 1
        advance = True
        if hops >= 2:
            back = sum(1 for w in g.neighbors(nxt) if int(w) in visited)
            if back <= 1:
                if _cbf_confirm(g, rng, nxt, cur, visited):
                    return cur
                advance = False  # walk is taken back to the predecessor
        visited.add(nxt)
        if advance:
            cur = nxt
    return cur


def _cbf_confirm(g: Graph, rng: random.Random, node: int, prev: int, prefix: set[int]) -> bool:
    candidates = [int(w) for w in g.neighbors(node) if int(w) != prev]
    probes = rng.sample(candidates, 2) if len(candidates) >= 2 else candidates
    for w in probes:
        if w in prefix:
            return False
        if any(int(x) in prefix for x in g.neighbors(w)):
            return False
    return True


def bhd(g: Graph, coverage: float, rng_seed: int) -> list[int]:
    """Bridge-hub detector: walks that immunize a (bridge, bridge-hub) pair.

    The walk keeps the union of all visited nodes' neighborhoods; the
    current node is a bridge when one of its neighbors lies outside that
    union and has no link back into it, and one such neighbor is immunized
    with it. The final pair may be truncated to hit the coverage exactly.
    """
    target = _target_count(g, coverage)
    rng = random.Random(rng_seed)
    step_cap = WALK_STEP_FACTOR * g.node_count
    budget = WALKS_PER_TARGET * target
    chosen: list[int] = []
    seen: set[int] = set()
    walks = 0
    while len(chosen) < target:
        if walks >= budget:
            raise BudgetError(
                f"bhd exhausted its budget of {budget} walks before reaching {target} targets"
            )
        walks += 1
        for node in _bhd_walk(g, rng, step_cap):
            if node not in seen:
                seen.add(node)
                chosen.append(node)
                if len(chosen) == target:
                    break
    return chosen


def _bhd_walk(g: Graph, rng: random.Random, step_cap: int) -> list[int]:
    """One walk; returns [bridge, hub] on a hit, else the last node reached."""
    cur = rng.randrange(g.node_count)
    visited = {cur}
    frontier_union = {int(x) for x in g.neighbors(cur)}
    for _ in range(step_cap):
        options = [int(v) for v in g.neighbors(cur) if int(v) not in visited]
        if not options:
            return [cur]
        nxt = options[rng.randrange(len(options))]
        nbrs = [int(x) for x in g.neighbors(nxt)]
        # nxt itself always belongs to the union (it neighbors cur), so it is
        # excluded from the back-connection check
        union_minus = frontier_union - {nxt}
        candidates = [
            w
            for w in nbrs
            if w not in frontier_union
            and not any(int(x) in union_minus for x in g.neighbors(w))
        ]
        if candidates:
            hub = candidates[rng.randrange(len(candidates))]
            return [nxt, hub]
        frontier_union.update(nbrs)
        visited.add(nxt)
        cur = nxt
    return [cur]
