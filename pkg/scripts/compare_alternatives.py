#!/usr/bin/env python3
"""Relative outbreak-size difference of each community measure against the
deterministic and stochastic alternatives on one benchmark graph: emits a
delta CSV per (proposed, alternative) pair.
"""

import argparse
import sys
from pathlib import Path

from commimmune.cli import main as cli

PROPOSED = ["nnc", "chb", "wchb"]
ALTERNATIVES = ["degree", "betweenness", "comm", "acquaintance", "cbf", "bhd"]


def run(cmd: list[str]) -> None:
    code = cli(cmd)
    if code != 0:
        sys.exit(code)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results/compare")
    ap.add_argument("--nodes", type=int, default=2000)
    ap.add_argument("--runs", type=int, default=600)
    ap.add_argument("--mu", default="0.4")
    ap.add_argument("--coverage", default="0.05,0.1,0.15,0.2,0.25")
    ap.add_argument("--lambda", dest="lam", default="0.2")
    ap.add_argument("--gamma", default="1.0")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", default="1")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = out / f"lfr_mu{args.mu.replace('.', '')}"
    run([
        "generate", "--n", str(args.nodes), "--avg-degree", "7", "--max-degree", "122",
        "--mu", args.mu, "--seed", str(args.seed), "--out", str(name),
    ])
    curves = out / "curves.csv"
    run([
        "simulate", "--graph", f"{name}.edges", "--partition", f"{name}.communities",
        "--strategy", ",".join(PROPOSED + ALTERNATIVES), "--coverage", args.coverage,
        "--lambda", args.lam, "--gamma", args.gamma, "--runs", str(args.runs),
        "--seed", str(args.seed), "--workers", args.workers, "--out", str(curves),
    ])
    for proposed in PROPOSED:
        for alt in ALTERNATIVES:
            run([
                "compare", "--baseline", str(curves), "--proposed", str(curves),
                "--baseline-strategy", alt, "--proposed-strategy", proposed,
                "--out", str(out / f"delta_{proposed}_vs_{alt}.csv"),
            ])
    print(f"wrote delta curves under {out}/")


if __name__ == "__main__":
    main()
