"""Compare the compiled and pure-Python DPLL kernels.

Three workloads:

* ``travel``: every goal instance of the travel corpus, decided with core
  minimization (the engine's real workload);
* ``3sat``: random 3-SAT near the phase transition (clause/atom ratio 4.26);
* ``cores``: unsatisfiable random 3-SAT with deletion-based core minimization.

Both kernels must return identical results; the script exits non-zero if
they ever disagree.

    python3 benchmarks/bench_backends.py --atoms 40 --instances 200
"""
from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from pathlib import Path

from ata import solver
from ata.engine import decide_all_goals
from ata.harness import load_claim_entry, load_manifest
from ata.ingest import RuleTableExtractor
from ata.lang import parse_kb
from ata.solver import SolverConfig, solve_cnf

TRAVEL = Path(__file__).resolve().parent.parent / "corpus" / "travel"


def random_3sat(rng: random.Random, atoms: int, ratio: float = 4.26) -> list[list[int]]:
    return [
        [v * rng.choice((1, -1)) for v in rng.sample(range(1, atoms + 1), 3)]
        for _ in range(round(atoms * ratio))
    ]


def travel_workload():
    kb = parse_kb((TRAVEL / "travel.atakb").read_text(encoding="utf-8"))
    rules = RuleTableExtractor.from_text((TRAVEL / "travel.atarules").read_text(encoding="utf-8"))
    claims = []
    for name in ("claims.manifest", "texts.manifest"):
        manifest = load_manifest(TRAVEL / name)
        claims += [load_claim_entry(kb, manifest.root / e.claim_path, rules) for e in manifest.entries]

    def run(backend: str):
        return [d.to_json() for c in claims for d in decide_all_goals(kb, c, cfg=SolverConfig(backend=backend))]

    return run


def cnf_workload(problems, minimize: bool):
    def run(backend: str):
        cfg = SolverConfig(minimize=minimize, backend=backend)
        return [solve_cnf(n, clauses, cfg) for n, clauses in problems]

    return run


def timed(fn, backend: str, repeats: int):
    times, result = [], None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times), result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=40, help="atoms per random 3-SAT instance")
    ap.add_argument("--instances", type=int, default=200, help="random instances per workload")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if "cython" not in solver.KERNELS:
        print("compiled kernel not built; rebuild with `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 2

    rng = random.Random(args.seed)
    sat_mix = [(args.atoms, random_3sat(rng, args.atoms)) for _ in range(args.instances)]
    unsat = []
    while len(unsat) < args.instances // 4:
        n = max(args.atoms // 2, 3)
        clauses = random_3sat(rng, n, ratio=6.0)
        if not solve_cnf(n, clauses, SolverConfig(minimize=False)).sat:
            unsat.append((n, clauses))

    workloads = [
        ("travel", travel_workload()),
        ("3sat", cnf_workload(sat_mix, minimize=False)),
        ("cores", cnf_workload(unsat, minimize=True)),
    ]
    print(f"{'workload':<10}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    ok = True
    for name, fn in workloads:
        py_best, _, py_out = timed(fn, "python", args.repeats)
        cy_best, _, cy_out = timed(fn, "cython", args.repeats)
        if py_out != cy_out:
            print(f"{name}: kernels disagree", file=sys.stderr)
            ok = False
        print(f"{name:<10}{py_best:>12.3f}{cy_best:>12.3f}{py_best / cy_best:>9.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
