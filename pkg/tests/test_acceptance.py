"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest -s`` to see them as they execute).

Criteria involving the Caltech and power-grid datasets skip unless the
user supplies the files (see README: data/caltech.edges,
data/powergrid.edges, or $COMMIMMUNE_DATA_DIR).
"""

import io
import math
import random
import time

import numpy as np
import pytest

import commimmune as cm
from commimmune.cli import main
from conftest import (
    TOY_COMMUNITY,
    TOY_EDGES_TEXT,
    TRIANGLES_TEXT,
    clique_pair,
    data_file,
    graph_from_text,
)
from oracles import (
    adjacency_sets,
    oracle_betweenness,
    oracle_chb,
    oracle_comm_measure,
    oracle_component,
    oracle_degree,
    oracle_nnc,
    oracle_wchb,
    random_assignment,
    random_graph_edges,
)


def _report(criterion: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance {criterion}] {status} {detail}".rstrip())
    return ok


def test_criterion_1_measure_oracle_equivalence():
    """Proposed measures, comm and degree equal a literal brute-force oracle
    on 200 random (graph, partition) instances; runtime under 10 s."""
    rng = random.Random(314159)
    start = time.perf_counter()
    checked = 0
    for _ in range(200):
        n = rng.randint(2, 50)
        g = cm.Graph.from_edges(n, random_graph_edges(rng, n, rng.uniform(0.1, 0.5)))
        p = cm.Partition.from_assignment(random_assignment(rng, n, 8))
        adj = adjacency_sets(g)
        labels = list(p.assignment)
        nnc = cm.neighboring_communities_scores(g, p).scores
        chb = cm.community_hub_bridge_scores(g, p).scores
        wchb = cm.weighted_community_hub_bridge_scores(g, p).scores
        comm = cm.comm_scores(g, p).scores
        deg = cm.degree_scores(g).scores
        for i in range(n):
            assert nnc[i] == oracle_nnc(adj, labels, i)
            assert chb[i] == oracle_chb(adj, labels, i)
            assert abs(wchb[i] - float(oracle_wchb(adj, labels, i))) < 1e-12
            assert comm[i] == oracle_comm_measure(adj, labels, i)
            assert deg[i] == oracle_degree(adj, i)
            checked += 1
    elapsed = time.perf_counter() - start
    ok = elapsed < 10.0
    assert _report("1", ok, f"{checked} node scores on 200 graphs in {elapsed:.1f}s")


def test_criterion_2_betweenness_oracle():
    """Betweenness matches all-geodesic enumeration on 20 random graphs."""
    rng = random.Random(271828)
    worst = 0.0
    for _ in range(20):
        n = rng.randint(3, 30)
        g = cm.Graph.from_edges(n, random_graph_edges(rng, n, rng.uniform(0.1, 0.4)))
        expected = oracle_betweenness(adjacency_sets(g))
        got = cm.betweenness_scores(g).scores
        worst = max(worst, float(np.max(np.abs(got - np.asarray(expected)))))
    ok = worst <= 1e-9
    assert _report("2", ok, f"max |difference| = {worst:.2e}")


def test_criterion_3_toy_anchors():
    """Hand-built toy network: n5 reaches 3 communities and ranks first;
    community C1's interconnection density is 0.15 +/- 0.01."""
    g = graph_from_text(TOY_EDGES_TEXT)
    p = cm.Partition.from_assignment([TOY_COMMUNITY[g.label_of(i)] for i in range(g.node_count)])
    n5 = g.label_index["n5"]
    nnc_n5 = cm.neighboring_communities(g, p, n5)
    ranking = cm.rank(cm.neighboring_communities_scores(g, p))
    first = int(ranking.order[0])
    rho_c1 = cm.interconnection_density(g, p, p.community_of(n5))
    ok = nnc_n5 == 3 and first == n5 and abs(rho_c1 - 0.15) <= 0.01
    assert _report(
        "3", ok, f"nnc(n5)={nnc_n5}, top={g.label_of(first)}, rho_C1={rho_c1:.4f}"
    )


def test_criterion_4_sir_degenerate_checks():
    """Zero transmission gives epidemic size exactly 1; certain transmission
    with one-step recovery infects exactly the seed's component."""
    g = clique_pair(6)
    out = cm.sir_ensemble(g, [], cm.SirConfig(lam=0.0, gamma=1.0, runs=50, master_seed=1))
    all_ones = out.mean_size == 1.0 and out.sd_size == 0.0

    rng = random.Random(1234)
    component_ok = True
    for _ in range(50):
        n = rng.randint(3, 25)
        gr = cm.Graph.from_edges(n, random_graph_edges(rng, n, 0.15))
        cfg = cm.SirConfig(lam=1.0, gamma=1.0, runs=1)
        run = cm.sir_run(gr, cm.immunize(gr, []), cfg, run_seed=rng.randint(0, 1 << 30),
                         keep_state=True)
        infected = np.flatnonzero(run.final_state == 2)
        component = oracle_component(adjacency_sets(gr), int(infected[0]))
        component_ok &= set(infected.tolist()) == component and run.size == len(component)
    ok = all_ones and component_ok
    assert _report("4", ok, f"lam=0 mean={out.mean_size}, 50 BFS component checks")


def test_criterion_5_modularity_and_louvain():
    """Fixture modularity equals 5/14; Louvain recovers planted cliques and
    never lets modularity decrease across passes."""
    g = graph_from_text(TRIANGLES_TEXT)
    p = cm.Partition.from_assignment([0, 0, 0, 1, 1, 1])
    fixture_ok = abs(cm.modularity(g, p) - 5 / 14) <= 1e-12

    cliques = clique_pair(5)
    part = cm.louvain(cliques, rng_seed=3)
    groups = {frozenset(c.tolist()) for c in part.communities}
    recovery_ok = groups == {frozenset(range(5)), frozenset(range(5, 10))}

    rng = random.Random(777)
    monotone_ok = True
    for _ in range(25):
        n = rng.randint(2, 30)
        gr = cm.Graph.from_edges(n, random_graph_edges(rng, n, rng.uniform(0.1, 0.4)))
        _, history = cm.louvain_with_history(gr, rng_seed=rng.randint(0, 999))
        monotone_ok &= all(b >= a - 1e-12 for a, b in zip(history, history[1:]))

    ok = fixture_ok and recovery_ok and monotone_ok
    assert _report(
        "5",
        ok,
        f"fixture Q={cm.modularity(g, p):.12f}, clique recovery={recovery_ok}, "
        f"Q monotone on 25 graphs={monotone_ok}",
    )


def test_criterion_5_caltech_real_data():
    """Caltech (user-supplied): detected Q within 0.05 and community count
    within 5 of the published 0.788 / 13."""
    path = data_file("caltech.edges")
    if path is None:
        pytest.skip("caltech.edges not supplied (see README data section)")
    with open(path) as fh:
        g, _ = cm.load_edge_list(fh)
    part = cm.louvain(g, rng_seed=0)
    q = cm.modularity(g, part)
    ok = abs(q - 0.788) <= 0.05 and abs(part.community_count - 13) <= 5
    assert _report("5-caltech", ok, f"Q={q:.3f}, N_c={part.community_count}")


def test_criterion_6_mixing_estimation(two_triangles):
    g, p = two_triangles
    ok = cm.estimate_mixing(g, p) == 2 / 14
    assert _report("6", ok, f"fixture mixing = {cm.estimate_mixing(g, p)}")


def test_criterion_6_powergrid_real_data():
    """Power grid (user-supplied): estimated mixing 0.034 +/- 0.02."""
    path = data_file("powergrid.edges")
    if path is None:
        pytest.skip("powergrid.edges not supplied (see README data section)")
    with open(path) as fh:
        g, _ = cm.load_edge_list(fh)
    part = cm.louvain(g, rng_seed=0)
    mu_hat = cm.estimate_mixing(g, part)
    ok = abs(mu_hat - 0.034) <= 0.02
    assert _report("6-powergrid", ok, f"mu_hat={mu_hat:.4f}")


@pytest.mark.parametrize("mu", [0.1, 0.4, 0.7])
def test_criterion_7_generator_validity(mu):
    """Benchmark parameters scaled to N=2000: measured mixing within 0.05,
    mean degree 7 +/- 0.7, community sizes within range, under 30 s."""
    start = time.perf_counter()
    params = cm.LfrParams(
        n=2000, avg_degree=7.0, max_degree=122, mu=mu,
        community_size_range=(50, 250), rng_seed=424242,
    )
    g, p = cm.generate(params)
    elapsed = time.perf_counter() - start
    mu_hat = cm.estimate_mixing(g, p)
    mean_degree = 2 * g.edge_count / g.node_count
    ok = (
        abs(mu_hat - mu) <= 0.05
        and abs(mean_degree - 7.0) <= 0.7
        and int(p.sizes.min()) >= 50
        and int(p.sizes.max()) <= 250
        and elapsed < 30.0
    )
    assert _report(
        "7", ok,
        f"mu={mu}: mu_hat={mu_hat:.4f}, mean_degree={mean_degree:.2f}, "
        f"sizes [{int(p.sizes.min())},{int(p.sizes.max())}], {elapsed:.1f}s",
    )


def _ordering_cell(mu: float, master: int = 20260809):
    params = cm.LfrParams(
        n=2000, avg_degree=7.0, max_degree=122, mu=mu,
        community_size_range=(50, 250), rng_seed=master,
    )
    g, p = cm.generate(params)
    scorers = {
        "nnc": lambda: cm.neighboring_communities_scores(g, p),
        "chb": lambda: cm.community_hub_bridge_scores(g, p),
        "wchb": lambda: cm.weighted_community_hub_bridge_scores(g, p),
        "degree": lambda: cm.degree_scores(g),
    }

    def ensemble(name, si):
        order = cm.rank(scorers[name]()).order
        targets = cm.ranking_prefix(order, 0.10)
        cell_seed = int(np.random.SeedSequence([master, si]).generate_state(1)[0])
        cfg = cm.SirConfig(lam=0.2, gamma=1.0, runs=600, master_seed=cell_seed)
        return cm.sir_ensemble(g, targets, cfg)

    return ensemble


def test_criterion_8a_strong_structure_chb_vs_degree():
    """mu=0.1, lam=0.2, gamma=1.0, 600 runs, 10% coverage: hub-bridge
    immunization must beat plain degree by more than 2 pooled SEs."""
    start = time.perf_counter()
    ensemble = _ordering_cell(0.1)
    chb = ensemble("chb", 0)
    deg = ensemble("degree", 1)
    z = cm.separation_z(deg, chb)  # positive when chb yields smaller epidemics
    delta = cm.relative_difference(deg.mean_size, chb.mean_size)
    elapsed = time.perf_counter() - start
    ok = chb.mean_size < deg.mean_size and delta > 0 and z > 2 and elapsed < 300
    assert _report(
        "8a", ok,
        f"chb={chb.mean_size:.2f} degree={deg.mean_size:.2f} delta_r={delta:.3f} "
        f"z={z:.2f} ({elapsed:.0f}s)",
    )


def test_criterion_8b_medium_structure_nnc_best():
    """mu=0.4, same protocol: neighboring-communities immunization beats both
    hub-bridge variants by more than 2 pooled SEs."""
    start = time.perf_counter()
    ensemble = _ordering_cell(0.4)
    nnc = ensemble("nnc", 0)
    chb = ensemble("chb", 1)
    wchb = ensemble("wchb", 2)
    z_chb = cm.separation_z(chb, nnc)
    z_wchb = cm.separation_z(wchb, nnc)
    elapsed = time.perf_counter() - start
    ok = (
        nnc.mean_size < chb.mean_size
        and nnc.mean_size < wchb.mean_size
        and z_chb > 2
        and z_wchb > 2
        and elapsed < 300
    )
    assert _report(
        "8b", ok,
        f"nnc={nnc.mean_size:.2f} chb={chb.mean_size:.2f} wchb={wchb.mean_size:.2f} "
        f"z={z_chb:.2f}/{z_wchb:.2f} ({elapsed:.0f}s)",
    )


def test_criterion_8c_weak_structure_wchb_vs_chb():
    """mu=0.7 (or 0.9), same protocol: weighted hub-bridge must beat plain
    hub-bridge by more than 2 pooled SEs on at least one of the two."""
    results = []
    for mu in (0.7, 0.9):
        start = time.perf_counter()
        ensemble = _ordering_cell(mu)
        wchb = ensemble("wchb", 0)
        chb = ensemble("chb", 1)
        z = cm.separation_z(chb, wchb)
        elapsed = time.perf_counter() - start
        results.append((mu, wchb.mean_size, chb.mean_size, z, elapsed))
    ok = any(w < c and z > 2 and t < 300 for _, w, c, z, t in results)
    detail = "; ".join(
        f"mu={mu}: wchb={w:.2f} chb={c:.2f} z={z:.2f} ({t:.0f}s)" for mu, w, c, z, t in results
    )
    assert _report("8c", ok, detail)


def test_criterion_9_pipeline_determinism(tmp_path):
    """Re-running any manifest reproduces byte-identical CSVs, independent of
    the worker count."""
    import hashlib

    graph = tmp_path / "g.edges"
    graph.write_text(TRIANGLES_TEXT)
    parts = tmp_path / "g.communities"
    parts.write_text("a 0\nb 0\nc 0\nd 1\ne 1\nf 1\n")
    out = tmp_path / "sim.csv"
    args = [
        "simulate", "--graph", str(graph), "--partition", str(parts),
        "--strategy", "chb,degree,acquaintance", "--coverage", "0.2,0.4",
        "--lambda", "0.5", "--gamma", "0.9", "--runs", "60",
        "--seed", "21", "--out", str(out),
    ]
    assert main(args) == 0
    digest = hashlib.sha256(out.read_bytes()).hexdigest()
    assert main(["rerun", str(tmp_path / "sim.csv.manifest.json")]) == 0
    rerun_same = hashlib.sha256(out.read_bytes()).hexdigest() == digest
    assert main(args[:-2] + ["--workers", "3", "--out", str(out)]) == 0
    workers_same = hashlib.sha256(out.read_bytes()).hexdigest() == digest

    rank_out = tmp_path / "rank.csv"
    assert main(["rank", "--graph", str(graph), "--partition", str(parts),
                 "--strategy", "wchb", "--out", str(rank_out)]) == 0
    rank_digest = hashlib.sha256(rank_out.read_bytes()).hexdigest()
    assert main(["rerun", str(tmp_path / "rank.csv.manifest.json")]) == 0
    rank_same = hashlib.sha256(rank_out.read_bytes()).hexdigest() == rank_digest

    ok = rerun_same and workers_same and rank_same
    assert _report("9", ok, f"rerun={rerun_same}, workers={workers_same}, rank={rank_same}")


def test_criterion_10_relative_difference_units():
    checks = [
        cm.relative_difference(100, 80) == pytest.approx(0.2),
        cm.relative_difference(42.5, 42.5) == 0.0,
        cm.relative_difference(50, 75) == pytest.approx(-0.5),
    ]
    try:
        cm.relative_difference(0, 10)
        checks.append(False)
    except ValueError:
        checks.append(True)
    ok = all(checks)
    assert _report("10", ok, "unit checks incl. zero-baseline error")
