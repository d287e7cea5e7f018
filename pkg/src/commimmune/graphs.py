"""Undirected simple graphs and non-overlapping node partitions.

Graphs use a CSR layout (``indptr``/``indices``) over dense 0-based node ids.
Original identifiers from edge-list files are kept in a label table. Both
``Graph`` and ``Partition`` are frozen after construction, so they can be
shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class EdgeListReport:
    """Counts of lines the edge-list loader dropped to keep the graph simple."""

    self_loops_dropped: int = 0
    duplicates_dropped: int = 0

    @property
    def dropped(self) -> int:
        return self.self_loops_dropped + self.duplicates_dropped


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``indices[indptr[i]:indptr[i+1]]`` is the sorted neighbor list of node
    ``i``. ``labels``, when present, maps node index to the identifier used
    in the source file.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = None

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i: int) -> np.ndarray:
        self._check_node(i)
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nbrs = self.neighbors(i)
        pos = int(np.searchsorted(nbrs, j))
        return pos < nbrs.size and int(nbrs[pos]) == j

    def label_of(self, i: int) -> str:
        self._check_node(i)
        return self.labels[i] if self.labels is not None else str(i)

    @cached_property
    def label_index(self) -> dict[str, int]:
        """Reverse lookup from label to node index."""
        if self.labels is not None:
            return {lab: i for i, lab in enumerate(self.labels)}
        return {str(i): i for i in range(self.node_count)}

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.node_count:
            raise IndexError(f"node {i} out of range for graph with {self.node_count} nodes")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and self.labels == other.labels
        )

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: tuple[str, ...] | None = None,
    ) -> "Graph":
        """Build a simple graph; self-loops and duplicate edges are dropped silently."""
        pairs = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise DataError(f"edge ({a}, {b}) out of range for {n} nodes")
            if a == b:
                continue
            pairs.add((a, b) if a < b else (b, a))
        if labels is not None and len(labels) != n:
            raise DataError("label table length does not match node count")
        if pairs:
            e = np.array(sorted(pairs), dtype=np.int64)
            src = np.concatenate([e[:, 0], e[:, 1]])
            dst = np.concatenate([e[:, 1], e[:, 0]])
            order = np.lexsort((dst, src))
            indices = dst[order]
            counts = np.bincount(src, minlength=n)
        else:
            indices = np.empty(0, dtype=np.int64)
            counts = np.zeros(n, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(indptr=indptr, indices=indices, labels=labels)


def load_edge_list(stream: TextIO) -> tuple[Graph, EdgeListReport]:
    """Parse whitespace-separated edge pairs into a simple undirected graph.

    Lines starting with ``#`` are ignored. Node identifiers may be arbitrary
    strings; they are remapped to dense indices in order of first appearance
    and retained as labels. Self-loops and duplicate edges are dropped, with
    the counts returned alongside the graph.
    """
    label_ids: dict[str, int] = {}
    raw_edges: list[tuple[int, int]] = []
    loops = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DataError(
                f"edge list line {lineno}: expected two node identifiers, got {len(parts)} tokens"
            )
        a = label_ids.setdefault(parts[0], len(label_ids))
        b = label_ids.setdefault(parts[1], len(label_ids))
        if a == b:
            loops += 1
            continue
        raw_edges.append((a, b) if a < b else (b, a))
    if not label_ids:
        raise DataError("edge list is empty")
    unique = set(raw_edges)
    dups = len(raw_edges) - len(unique)
    labels = tuple(sorted(label_ids, key=label_ids.get))
    g = Graph.from_edges(len(label_ids), unique, labels=labels)
    return g, EdgeListReport(self_loops_dropped=loops, duplicates_dropped=dups)


def write_edge_list(stream: TextIO, g: Graph) -> None:
    """Write one ``u v`` line per edge, each edge once, in index order."""
    for i in range(g.node_count):
        for j in g.neighbors(i):
            if i < int(j):
                stream.write(f"{g.label_of(i)} {g.label_of(int(j))}\n")


@dataclass(frozen=True, eq=False)
class Partition:
    """Non-overlapping assignment of every node to exactly one community.

    ``assignment[i]`` is the dense community index of node ``i``; all
    communities are non-empty by construction.
    """

    assignment: np.ndarray

    @classmethod
    def from_assignment(cls, values: Iterable[int]) -> "Partition":
        arr = np.asarray(list(values), dtype=np.int64)
        if arr.size == 0:
            raise DataError("partition covers no nodes")
        _, dense = np.unique(arr, return_inverse=True)
        return cls(assignment=dense.astype(np.int64))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(assignment=np.arange(n, dtype=np.int64))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls(assignment=np.zeros(n, dtype=np.int64))

    @property
    def node_count(self) -> int:
        return self.assignment.size

    @property
    def community_count(self) -> int:
        return int(self.assignment.max()) + 1 if self.assignment.size else 0

    @cached_property
    def communities(self) -> tuple[np.ndarray, ...]:
        order = np.argsort(self.assignment, kind="stable")
        bounds = np.searchsorted(self.assignment[order], np.arange(self.community_count + 1))
        return tuple(order[bounds[k] : bounds[k + 1]] for k in range(self.community_count))

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.community_count)

    def community_of(self, i: int) -> int:
        if not 0 <= i < self.node_count:
            raise IndexError(f"node {i} out of range for partition over {self.node_count} nodes")
        return int(self.assignment[i])

    def check_covers(self, g: Graph) -> None:
        if self.node_count != g.node_count:
            raise DataError(
                f"partition covers {self.node_count} nodes but graph has {g.node_count}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)


def degree(g: Graph, i: int) -> int:
    return g.degree(i)


def intra_degree(g: Graph, p: Partition, i: int) -> int:
    """Number of neighbors of ``i`` inside its own community."""
    p.check_covers(g)
    return int(np.count_nonzero(p.assignment[g.neighbors(i)] == p.assignment[i]))


def inter_degree(g: Graph, p: Partition, i: int) -> int:
    """Number of neighbors of ``i`` outside its own community."""
    return g.degree(i) - intra_degree(g, p, i)


def intra_inter_degrees(g: Graph, p: Partition) -> tuple[np.ndarray, np.ndarray]:
    """Intra-/inter-community degree of every node in one O(E) pass."""
    p.check_covers(g)
    n = g.node_count
    rows = np.repeat(np.arange(n), g.degrees)
    same = p.assignment[rows] == p.assignment[g.indices]
    intra = np.bincount(rows[same], minlength=n)
    return intra, g.degrees - intra


def concat_neighbors(g: Graph, nodes: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of ``nodes``, in node order (with repeats)."""
    counts = g.indptr[nodes + 1] - g.indptr[nodes]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    starts = g.indptr[nodes]
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    return g.indices[np.repeat(starts, counts) + offsets]
