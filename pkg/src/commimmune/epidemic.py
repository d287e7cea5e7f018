"""Discrete-time SIR Monte-Carlo engine and outbreak comparison metric.

Updates are synchronous: at each step every infectious node tries to infect
each susceptible neighbor independently with probability ``lam``, infections
resolve before recovery draws, and newly infected nodes become infectious
the following step. Each run owns a private RNG derived from
``(master_seed, run_index)``, so ensemble results are bit-identical no
matter how runs are distributed across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, concat_neighbors

SUSCEPTIBLE, INFECTED, RESISTANT = np.int8(0), np.int8(1), np.int8(2)

_SEED_POLICIES = ("uniform-susceptible",)


def coverage_count(n: int, fraction: float) -> int:
    """Number of nodes covered by a fraction: ceil(fraction * n), guarded
    against float fuzz at exact multiples."""
    if not 0 <= fraction <= 1:
        raise ValueError(f"coverage fraction must be in [0, 1], got {fraction}")
    if fraction == 0:
        return 0
    return int(math.ceil(fraction * n - 1e-9))


def ranking_prefix(order: Sequence[int] | np.ndarray, fraction: float) -> np.ndarray:
    """First ceil(fraction * N) nodes of a ranking."""
    arr = np.asarray(order, dtype=np.int64)
    return arr[: coverage_count(arr.size, fraction)]


@dataclass(frozen=True)
class SirConfig:
    """Epidemic parameters: per-contact transmission probability ``lam``,
    per-step recovery probability ``gamma``, ensemble size and seeding."""

    lam: float
    gamma: float
    runs: int = 600
    master_seed: int = 0
    seed_policy: str = "uniform-susceptible"

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        if self.seed_policy not in _SEED_POLICIES:
            raise ValueError(f"unknown seed policy: {self.seed_policy!r}")


@dataclass(frozen=True)
class SirRun:
    """Outcome of a single realization."""

    size: int
    steps: int
    final_state: np.ndarray | None = None


@dataclass(frozen=True)
class SirOutcome:
    """Ensemble outcome; sizes and durations per run, in run-index order."""

    per_run_sizes: np.ndarray
    per_run_steps: np.ndarray

    @property
    def runs(self) -> int:
        return self.per_run_sizes.size

    @property
    def mean_size(self) -> float:
        return float(self.per_run_sizes.mean())

    @property
    def sd_size(self) -> float:
        if self.runs < 2:
            return 0.0
        return float(self.per_run_sizes.std(ddof=1))

    @property
    def mean_steps(self) -> float:
        return float(self.per_run_steps.mean())


def immunize(g: Graph, targets: Iterable[int]) -> np.ndarray:
    """Initial state vector with the target nodes resistant, all others
    susceptible."""
    state = np.zeros(g.node_count, dtype=np.int8)
    idx = np.asarray(list(targets), dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= g.node_count:
            raise IndexError("immunization target out of range")
        state[idx] = RESISTANT
    return state


def sir_run(
    g: Graph,
    state: np.ndarray,
    cfg: SirConfig,
    run_seed,
    keep_state: bool = False,
) -> SirRun:
    """One realization starting from a uniform random susceptible seed."""
    rng = np.random.default_rng(run_seed)
    cur = state.copy()
    susceptible = np.flatnonzero(cur == SUSCEPTIBLE)
    if susceptible.size == 0:
        raise ValueError("no susceptible node available to seed the outbreak")
    seed_node = int(susceptible[rng.integers(susceptible.size)])
    cur[seed_node] = INFECTED
    frontier = np.array([seed_node], dtype=np.int64)
    size = 1
    steps = 0
    lam, gamma = cfg.lam, cfg.gamma
    while frontier.size:
        steps += 1
        contacts = concat_neighbors(g, frontier)
        contacts = contacts[cur[contacts] == SUSCEPTIBLE]
        if contacts.size and lam > 0.0:
            hits = contacts[rng.random(contacts.size) < lam]
            fresh = np.unique(hits)
        else:
            fresh = np.empty(0, dtype=np.int64)
        recovered = rng.random(frontier.size) < gamma
        cur[frontier[recovered]] = RESISTANT
        cur[fresh] = INFECTED
        size += fresh.size
        frontier = np.sort(np.concatenate([frontier[~recovered], fresh]))
    return SirRun(size=size, steps=steps, final_state=cur if keep_state else None)


def _run_chunk(g: Graph, state: np.ndarray, cfg: SirConfig, run_indices: np.ndarray):
    sizes = np.empty(run_indices.size, dtype=np.int64)
    steps = np.empty(run_indices.size, dtype=np.int64)
    for pos, r in enumerate(run_indices):
        seed = np.random.SeedSequence([cfg.master_seed, int(r)])
        out = sir_run(g, state, cfg, seed)
        sizes[pos] = out.size
        steps[pos] = out.steps
    return run_indices, sizes, steps


def sir_ensemble(
    g: Graph,
    targets: Iterable[int],
    cfg: SirConfig,
    workers: int = 1,
) -> SirOutcome:
    """Run ``cfg.runs`` independent realizations on the immunized graph.

    Per-run seeds are derived from ``(master_seed, run_index)``; results are
    gathered by run index, so the outcome does not depend on ``workers``.
    """
    state = immunize(g, targets)
    if not np.any(state == SUSCEPTIBLE):
        raise ValueError("every node is immunized; nothing to simulate")
    all_runs = np.arange(cfg.runs, dtype=np.int64)
    sizes = np.empty(cfg.runs, dtype=np.int64)
    steps = np.empty(cfg.runs, dtype=np.int64)
    if workers <= 1:
        _, sizes, steps = _run_chunk(g, state, cfg, all_runs)
    else:
        chunks = np.array_split(all_runs, min(workers * 4, cfg.runs))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, g, state, cfg, c) for c in chunks if c.size]
            for fut in futures:
                idx, s, t = fut.result()
                sizes[idx] = s
                steps[idx] = t
    return SirOutcome(per_run_sizes=sizes, per_run_steps=steps)


def relative_difference(r_baseline: float, r_proposed: float) -> float:
    """Relative outbreak-size reduction of the proposed strategy over the
    baseline; positive means the proposed strategy contained the epidemic
    better."""
    if r_baseline <= 0:
        raise ValueError(f"baseline epidemic size must be positive, got {r_baseline}")
    return (r_baseline - r_proposed) / r_baseline


def separation_z(a: SirOutcome, b: SirOutcome) -> float:
    """(mean(a) - mean(b)) in units of the pooled standard error."""
    se = math.sqrt(a.sd_size**2 / a.runs + b.sd_size**2 / b.runs)
    if se == 0.0:
        return 0.0 if a.mean_size == b.mean_size else math.inf * np.sign(a.mean_size - b.mean_size)
    return (a.mean_size - b.mean_size) / se
