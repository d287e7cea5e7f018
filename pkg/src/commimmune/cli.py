"""Experiment command line: generate / detect / rank / simulate / compare.

Every run writes a JSON manifest (resolved parameters, input digests, seed,
tool version, output paths) before its results; ``rerun <manifest>``
replays it and reproduces the output files byte for byte. Option
precedence is flags > config file > defaults, where the config file is a
flat ``key = value`` text file keyed by the long option names.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .centrality import (
    ScoreMap,
    betweenness_scores,
    comm_scores,
    community_hub_bridge_scores,
    degree_scores,
    neighboring_communities_scores,
    rank,
    weighted_community_hub_bridge_scores,
)
from .community import (
    estimate_mixing,
    load_partition,
    louvain,
    modularity,
    save_partition,
)
from .epidemic import SirConfig, coverage_count, relative_difference, sir_ensemble
from .errors import BudgetError, DataError, FeasibilityError
from .graphs import Graph, Partition, load_edge_list, write_edge_list
from .lfr import LfrParams, generate
from .stochastic import acquaintance, bhd, cbf

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 0, 1, 2, 3

_PARTITION_SCORERS: dict[str, Callable[[Graph, Partition], ScoreMap]] = {
    "nnc": neighboring_communities_scores,
    "chb": community_hub_bridge_scores,
    "wchb": weighted_community_hub_bridge_scores,
    "comm": comm_scores,
}
_PLAIN_SCORERS: dict[str, Callable[[Graph], ScoreMap]] = {
    "degree": degree_scores,
    "betweenness": betweenness_scores,
}
_STOCHASTIC = {"acquaintance": acquaintance, "cbf": cbf, "bhd": bhd}
_ALL_STRATEGIES = sorted({**_PARTITION_SCORERS, **_PLAIN_SCORERS, **_STOCHASTIC})


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class _Opt:
    conv: Callable[[str], object]
    default: object = None
    required: bool = False
    help: str = ""


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _csv_names(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("expected at least one strategy name")
    return names


_SPECS: dict[str, dict[str, _Opt]] = {
    "generate": {
        "n": _Opt(int, required=True, help="number of nodes"),
        "avg-degree": _Opt(float, 7.0, help="target average degree"),
        "max-degree": _Opt(int, required=True, help="maximum degree"),
        "mu": _Opt(float, required=True, help="target mixing parameter in [0, 1)"),
        "degree-exponent": _Opt(float, 3.0),
        "community-exponent": _Opt(float, 2.5),
        "size-min": _Opt(int, 50, help="minimum community size"),
        "size-max": _Opt(int, 250, help="maximum community size"),
        "seed": _Opt(int, 0),
        "out": _Opt(str, required=True, help="output name; writes <out>.edges and <out>.communities"),
    },
    "detect": {
        "graph": _Opt(str, required=True, help="edge-list file"),
        "partition": _Opt(str, help="evaluate this partition file instead of detecting"),
        "seed": _Opt(int, 0, help="detection sweep seed"),
        "out": _Opt(str, help="write the partition here"),
    },
    "rank": {
        "graph": _Opt(str, required=True),
        "partition": _Opt(str),
        "strategy": _Opt(str, required=True, help="one of: " + ", ".join(_ALL_STRATEGIES)),
        "seed": _Opt(int, help="required for stochastic strategies"),
        "tie-rule": _Opt(str, "index", help="index | shuffle"),
        "out": _Opt(str, required=True, help="output CSV: node,score,rank"),
    },
    "simulate": {
        "graph": _Opt(str, required=True),
        "partition": _Opt(str),
        "strategy": _Opt(_csv_names, required=True, help="comma-separated strategy names"),
        "coverage": _Opt(_csv_floats, required=True, help="comma-separated coverage fractions"),
        "lambda": _Opt(float, 0.2, help="per-contact transmission probability"),
        "gamma": _Opt(float, 1.0, help="per-step recovery probability"),
        "runs": _Opt(int, 600),
        "seed": _Opt(int, 0, help="master seed for the whole sweep"),
        "workers": _Opt(int, 1),
        "out": _Opt(str, required=True, help="output CSV: strategy,coverage,mean_epidemic_size,sd,runs"),
    },
    "compare": {
        "baseline": _Opt(str, required=True, help="simulate CSV of the baseline strategy"),
        "proposed": _Opt(str, required=True, help="simulate CSV of the proposed strategy"),
        "baseline-strategy": _Opt(str, help="select this strategy from the baseline CSV"),
        "proposed-strategy": _Opt(str, help="select this strategy from the proposed CSV"),
        "out": _Opt(str, required=True, help="output CSV: coverage,delta_r"),
    },
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _sha256(path: str) -> str:
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return f"sha256:{digest}"


def _write_manifest(command: str, params: dict, inputs: list[str], outputs: list[str]) -> None:
    doc = {
        "tool": "commimmune",
        "version": __version__,
        "command": command,
        "params": params,
        "inputs": {p: _sha256(p) for p in inputs},
        "outputs": outputs,
    }
    path = Path(str(params["out"]) + ".manifest.json")
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _write_csv(path: str, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        g, report = load_edge_list(fh)
    if report.dropped:
        print(
            f"note: dropped {report.self_loops_dropped} self-loops and "
            f"{report.duplicates_dropped} duplicate edges from {path}",
            file=sys.stderr,
        )
    return g


def _load_partition_file(path: str, g: Graph) -> Partition:
    with open(path) as fh:
        return load_partition(fh, g)


def _strategy_order(name, g, part, seed, max_coverage):
    """Full immunization order for a strategy; stochastic orders are the
    selection stream up to max_coverage."""
    if name in _PARTITION_SCORERS:
        if part is None:
            raise UsageError(f"strategy {name!r} needs --partition")
        return list(rank(_PARTITION_SCORERS[name](g, part)).order)
    if name in _PLAIN_SCORERS:
        return list(rank(_PLAIN_SCORERS[name](g)).order)
    if name in _STOCHASTIC:
        if seed is None:
            raise UsageError(f"stochastic strategy {name!r} requires --seed")
        return _STOCHASTIC[name](g, max_coverage, seed)
    raise UsageError(f"unknown strategy {name!r}; choose from: {', '.join(_ALL_STRATEGIES)}")


def _cmd_generate(params: dict) -> None:
    lfr_params = LfrParams(
        n=params["n"],
        avg_degree=params["avg_degree"],
        max_degree=params["max_degree"],
        mu=params["mu"],
        degree_exponent=params["degree_exponent"],
        community_exponent=params["community_exponent"],
        community_size_range=(params["size_min"], params["size_max"]),
        rng_seed=params["seed"],
    )
    out = params["out"]
    edges_path, comm_path = f"{out}.edges", f"{out}.communities"
    _write_manifest("generate", params, inputs=[], outputs=[edges_path, comm_path])
    g, part = generate(lfr_params)
    with open(edges_path, "w") as fh:
        write_edge_list(fh, g)
    with open(comm_path, "w") as fh:
        save_partition(fh, part, g)
    measured = estimate_mixing(g, part)
    print(
        f"N={g.node_count} E={g.edge_count} N_c={part.community_count} "
        f"mu_hat={_fmt(measured)} -> {edges_path}, {comm_path}"
    )


def _cmd_detect(params: dict) -> None:
    g = _load_graph(params["graph"])
    if params.get("partition"):
        part = _load_partition_file(params["partition"], g)
    else:
        part = louvain(g, rng_seed=params["seed"])
    q = modularity(g, part)
    mu_hat = estimate_mixing(g, part)
    print(
        f"N={g.node_count} E={g.edge_count} Q={_fmt(q)} "
        f"N_c={part.community_count} mu_hat={_fmt(mu_hat)}"
    )
    if params.get("out"):
        _write_manifest("detect", params, inputs=[params["graph"]], outputs=[params["out"]])
        with open(params["out"], "w") as fh:
            save_partition(fh, part, g)


def _cmd_rank(params: dict) -> None:
    g = _load_graph(params["graph"])
    part = _load_partition_file(params["partition"], g) if params.get("partition") else None
    name = params["strategy"]
    if name not in _ALL_STRATEGIES:
        raise UsageError(f"unknown strategy {name!r}; choose from: {', '.join(_ALL_STRATEGIES)}")
    inputs = [params["graph"]] + ([params["partition"]] if params.get("partition") else [])
    _write_manifest("rank", params, inputs=inputs, outputs=[params["out"]])
    n = g.node_count
    if name in _STOCHASTIC:
        order = _strategy_order(name, g, part, params.get("seed"), 1.0)
        rows = [(g.label_of(v), float(n - pos), pos + 1) for pos, v in enumerate(order)]
    else:
        if name in _PARTITION_SCORERS:
            if part is None:
                raise UsageError(f"strategy {name!r} needs --partition")
            sm = _PARTITION_SCORERS[name](g, part)
        else:
            sm = _PLAIN_SCORERS[name](g)
        tie_rule = params.get("tie_rule", "index")
        ranking = rank(sm, tie_rule=tie_rule, rng_seed=params.get("seed"))
        rows = [
            (g.label_of(int(v)), float(sm.scores[int(v)]), pos + 1)
            for pos, v in enumerate(ranking.order)
        ]
    _write_csv(params["out"], ["node", "score", "rank"], rows)


def _cmd_simulate(params: dict) -> None:
    g = _load_graph(params["graph"])
    part = _load_partition_file(params["partition"], g) if params.get("partition") else None
    strategies = params["strategy"]
    coverages = params["coverage"]
    for name in strategies:
        if name not in _ALL_STRATEGIES:
            raise UsageError(f"unknown strategy {name!r}; choose from: {', '.join(_ALL_STRATEGIES)}")
    if not coverages or any(not 0 < c < 1 for c in coverages):
        raise UsageError("coverages must lie strictly between 0 and 1")
    if any(b <= a for a, b in zip(coverages, coverages[1:])):
        raise UsageError("coverages must be strictly increasing")
    if any(s in _PARTITION_SCORERS for s in strategies) and part is None:
        raise UsageError("community-based strategies need --partition")
    master = params["seed"]
    if master < 0:
        raise UsageError("--seed must be non-negative")
    inputs = [params["graph"]] + ([params["partition"]] if params.get("partition") else [])
    _write_manifest("simulate", params, inputs=inputs, outputs=[params["out"]])
    n = g.node_count
    rows = []
    for si, name in enumerate(strategies):
        strategy_seed = int(np.random.SeedSequence([master, si]).generate_state(1)[0])
        seed_for_order = params.get("seed") if name not in _STOCHASTIC else strategy_seed
        order = _strategy_order(name, g, part, seed_for_order, max(coverages))
        for ci, cov in enumerate(coverages):
            targets = order[: coverage_count(n, cov)]
            cell_seed = int(np.random.SeedSequence([master, si, ci]).generate_state(1)[0])
            cfg = SirConfig(
                lam=params["lambda"],
                gamma=params["gamma"],
                runs=params["runs"],
                master_seed=cell_seed,
            )
            outcome = sir_ensemble(g, targets, cfg, workers=params["workers"])
            rows.append((name, cov, outcome.mean_size, outcome.sd_size, cfg.runs))
            print(
                f"simulate: {name} coverage={_fmt(cov)} "
                f"mean={_fmt(outcome.mean_size)} sd={_fmt(outcome.sd_size)}",
                file=sys.stderr,
            )
    _write_csv(params["out"], ["strategy", "coverage", "mean_epidemic_size", "sd", "runs"], rows)


def _read_curve(path: str, strategy: str | None) -> list[tuple[str, float]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"coverage", "mean_epidemic_size"} <= set(
            reader.fieldnames
        ):
            raise DataError(f"{path}: expected columns coverage and mean_epidemic_size")
        rows = list(reader)
    has_strategy = "strategy" in (rows[0] if rows else {})
    if strategy is not None:
        if not has_strategy:
            raise DataError(f"{path}: no strategy column to filter on")
        rows = [r for r in rows if r["strategy"] == strategy]
        if not rows:
            raise DataError(f"{path}: strategy {strategy!r} not found")
    elif has_strategy and len({r["strategy"] for r in rows}) > 1:
        raise DataError(f"{path}: multiple strategies present; select one with a strategy flag")
    if not rows:
        raise DataError(f"{path}: no data rows")
    curve = []
    for r in rows:
        try:
            curve.append((r["coverage"], float(r["mean_epidemic_size"])))
        except (TypeError, ValueError):
            raise DataError(f"{path}: malformed numeric value in row {r}") from None
    return curve


def _cmd_compare(params: dict) -> None:
    base = _read_curve(params["baseline"], params.get("baseline_strategy"))
    prop = _read_curve(params["proposed"], params.get("proposed_strategy"))
    base_cov = [c for c, _ in base]
    prop_cov = [c for c, _ in prop]
    if base_cov != prop_cov:
        raise DataError(
            f"coverage grids differ: baseline {base_cov} vs proposed {prop_cov}"
        )
    _write_manifest(
        "compare", params, inputs=[params["baseline"], params["proposed"]], outputs=[params["out"]]
    )
    prop_by_cov = dict(prop)
    rows = []
    for cov, r_base in base:
        try:
            delta = relative_difference(r_base, prop_by_cov[cov])
        except ValueError as exc:
            raise DataError(str(exc)) from None
        rows.append((float(cov), delta))
    _write_csv(params["out"], ["coverage", "delta_r"], rows)


_HANDLERS = {
    "generate": _cmd_generate,
    "detect": _cmd_detect,
    "rank": _cmd_rank,
    "simulate": _cmd_simulate,
    "compare": _cmd_compare,
}


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(command: str, ns_values: dict, config_path: str | None) -> dict:
    spec = _SPECS[command]
    config = _read_config(config_path) if config_path else {}
    known = {name.replace("-", "_") for name in spec}
    for key in config:
        if key not in known:
            raise UsageError(f"config key {key!r} is not an option of {command!r}")
    resolved: dict = {}
    for name, opt in spec.items():
        key = name.replace("-", "_")
        raw = ns_values.get(key)
        if raw is None:
            raw = config.get(key)
        if raw is None:
            if opt.required:
                raise UsageError(f"missing required option --{name}")
            resolved[key] = opt.default
            continue
        if isinstance(raw, str):
            try:
                resolved[key] = opt.conv(raw)
            except UsageError:
                raise
            except (TypeError, ValueError):
                raise UsageError(f"invalid value for --{name}: {raw!r}") from None
        else:
            resolved[key] = raw
    return resolved


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the CLI reserves 2 for data errors
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="commimmune", description=__doc__)
    parser.add_argument("--version", action="version", version=f"commimmune {__version__}")
    sub = parser.add_subparsers(dest="command")
    for command, spec in _SPECS.items():
        p = sub.add_parser(command, description=f"{command} options")
        p.add_argument("--config", default=None, help="flat key = value option file")
        for name, opt in spec.items():
            p.add_argument(f"--{name}", dest=name.replace("-", "_"), default=None, help=opt.help)
    rerun = sub.add_parser("rerun", description="replay a previously written manifest")
    rerun.add_argument("manifest")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError("a subcommand is required (generate, detect, rank, simulate, compare, rerun)")
        if ns.command == "rerun":
            doc = json.loads(Path(ns.manifest).read_text())
            command, params = doc["command"], doc["params"]
            if command not in _HANDLERS:
                raise DataError(f"manifest names unknown command {command!r}")
            _HANDLERS[command](params)
        else:
            params = _resolve(ns.command, vars(ns), ns.config)
            _HANDLERS[ns.command](params)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, FeasibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
