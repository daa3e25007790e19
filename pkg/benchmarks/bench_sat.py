"""Compare the compiled DPLL kernel with its pure-Python twin.

Two workloads: random 3-SAT near the satisfiability threshold and the
groundings of restricted QBF translations. Both kernels see identical CSR
inputs and must agree on every verdict.

    python benchmarks/bench_sat.py [--instances N] [--atoms N] [--repeat N]
"""

import argparse
import random
import time

import numpy as np

from qealm import _kernel
from qealm.generate import QbfParams, generate_random_qbf
from qealm.ground import ground_clauses
from qealm.qbf import qbf_to_restricted


def random_3sat(rng: random.Random, atoms: int, ratio: float = 4.26):
    rows = [[rng.choice((-1, 1)) * a for a in rng.sample(range(1, atoms + 1), 3)]
            for _ in range(int(atoms * ratio))]
    indptr = np.arange(0, 3 * len(rows) + 1, 3, dtype=np.int64)
    return atoms, indptr, np.array([x for r in rows for x in r], dtype=np.int32)


def qbf_groundings(n: int):
    out = []
    for seed in range(n):
        r = random.Random(seed)
        problem, _ = qbf_to_restricted(generate_random_qbf(QbfParams(seed, r.randint(4, 8), r.randint(2, 8), 3)))
        out.append(ground_clauses(problem))
    return out


def timed(solve, inputs, repeat: int):
    best, verdicts = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        verdicts = [solve(*x) is not None for x in inputs]
        best = min(best, time.perf_counter() - start)
    return best, verdicts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=40)
    ap.add_argument("--atoms", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernel.compiled_solve_csr is None:
        print("compiled kernel not built; run `python setup.py build_ext --inplace` first")
        return 1
    rng = random.Random(args.seed)
    workloads = {
        f"random 3-SAT, {args.atoms} atoms": [random_3sat(rng, args.atoms) for _ in range(args.instances)],
        "restricted QBF groundings": qbf_groundings(args.instances),
    }
    print(f"{'workload':32} {'python s':>10} {'compiled s':>11} {'speedup':>8} {'sat':>5}")
    for name, inputs in workloads.items():
        py, v1 = timed(_kernel.python_solve_csr, inputs, args.repeat)
        cc, v2 = timed(_kernel.compiled_solve_csr, inputs, args.repeat)
        if v1 != v2:
            raise SystemExit(f"{name}: kernels disagree")
        print(f"{name:32} {py:10.3f} {cc:11.4f} {py / max(cc, 1e-9):8.1f} {sum(v1):5d}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
