"""Independent brute-force oracles for cross-checking library results.

Everything here is a deliberately literal, naive transcription working on
plain adjacency sets and community lists, with rational arithmetic where
exactness matters. Nothing in this module shares code paths with the
package implementations it checks.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction


def adjacency_sets(g) -> list[set[int]]:
    return [set(int(j) for j in g.neighbors(i)) for i in range(g.node_count)]


def oracle_degree(adj: list[set[int]], i: int) -> int:
    return len(adj[i])


def oracle_intra(adj, comm, i) -> int:
    return sum(1 for j in adj[i] if comm[j] == comm[i])


def oracle_inter(adj, comm, i) -> int:
    return sum(1 for j in adj[i] if comm[j] != comm[i])


def oracle_card(comm, k) -> int:
    return sum(1 for c in comm if c == k)


def oracle_nnc(adj, comm, i) -> int:
    """For each other community: 1 if any of its members neighbors i."""
    total = 0
    for label in sorted(set(comm)):
        if label == comm[i]:
            continue
        if any(j in adj[i] for j in range(len(adj)) if comm[j] == label):
            total += 1
    return total


def oracle_hub(adj, comm, i) -> int:
    return oracle_card(comm, comm[i]) * oracle_intra(adj, comm, i)


def oracle_bridge(adj, comm, i) -> int:
    return oracle_nnc(adj, comm, i) * oracle_inter(adj, comm, i)


def oracle_chb(adj, comm, i) -> int:
    return oracle_hub(adj, comm, i) + oracle_bridge(adj, comm, i)


def oracle_rho(adj, comm, k) -> Fraction:
    members = [i for i in range(len(adj)) if comm[i] == k]
    total = Fraction(0)
    for i in members:
        inter = oracle_inter(adj, comm, i)
        intra = oracle_intra(adj, comm, i)
        if inter + intra > 0:
            total += Fraction(inter, inter + intra)
    return total / len(members)


def oracle_wchb(adj, comm, i) -> Fraction:
    rho = oracle_rho(adj, comm, comm[i])
    return rho * oracle_hub(adj, comm, i) + (1 - rho) * oracle_bridge(adj, comm, i)


def oracle_comm_measure(adj, comm, i) -> int:
    return oracle_intra(adj, comm, i) + oracle_inter(adj, comm, i) ** 2


def oracle_modularity(adj, comm) -> Fraction:
    n = len(adj)
    e = sum(len(a) for a in adj) // 2
    q = Fraction(0)
    for label in sorted(set(comm)):
        internal = (
            sum(1 for i in range(n) for j in adj[i] if comm[i] == label and comm[j] == label) // 2
        )
        total_degree = sum(len(adj[i]) for i in range(n) if comm[i] == label)
        q += Fraction(internal, e) - Fraction(total_degree, 2 * e) ** 2
    return q


def oracle_mixing(adj, comm) -> Fraction:
    inter = sum(oracle_inter(adj, comm, i) for i in range(len(adj)))
    total = sum(len(a) for a in adj)
    return Fraction(inter, total)


def _all_shortest_paths(adj, s, t) -> list[list[int]]:
    """Every geodesic from s to t, by DFS over the BFS distance field."""
    n = len(adj)
    dist = [-1] * n
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    if dist[t] < 0:
        return []
    paths = []

    def extend(path):
        v = path[-1]
        if v == t:
            paths.append(list(path))
            return
        for w in adj[v]:
            if dist[w] == dist[v] + 1 and dist[w] <= dist[t]:
                path.append(w)
                extend(path)
                path.pop()

    extend([s])
    return paths


def oracle_betweenness(adj) -> list[float]:
    """Enumerate all geodesics of every unordered pair; endpoints excluded."""
    n = len(adj)
    scores = [0.0] * n
    for s in range(n):
        for t in range(s + 1, n):
            paths = _all_shortest_paths(adj, s, t)
            if not paths:
                continue
            weight = 1.0 / len(paths)
            for path in paths:
                for v in path[1:-1]:
                    scores[v] += weight
    return scores


def oracle_component(adj, start: int, blocked: set[int] | None = None) -> set[int]:
    blocked = blocked or set()
    if start in blocked:
        return set()
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                queue.append(w)
    return seen


def random_graph_edges(rng: random.Random, n: int, p: float) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def random_assignment(rng: random.Random, n: int, max_communities: int) -> list[int]:
    k = rng.randint(1, max_communities)
    return [rng.randrange(k) for _ in range(n)]
