"""Compiled vs pure-Python echelon kernel.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--size 120]

Two workloads: random sparse integer matrices (rank and nullspace) and an
end-to-end Hom-complex computation, run once per kernel by swapping the
``Echelon`` class that ``siltkit.linalg`` and ``siltkit.homotopy`` use.
"""
from __future__ import annotations

import argparse
import random
import statistics
import time

from siltkit import _echelon_py
from siltkit import homotopy, linalg

try:
    from siltkit import _echelon as _echelon_c
except ImportError:  # extension not built
    _echelon_c = None


def random_rows(rng: random.Random, n: int, density: float = 0.08, span: int = 7) -> list[dict]:
    """``n`` sparse rows of width ``n``; the last quarter are combinations of earlier ones."""
    rows = []
    for _ in range(n - n // 4):
        row = {j: rng.randint(-span, span) for j in range(n) if rng.random() < density}
        rows.append({j: v for j, v in row.items() if v})
    for _ in range(n // 4):
        a, b = rng.sample(rows, 2)
        ca, cb = rng.randint(1, span), rng.randint(-span, -1)
        row = {j: ca * a.get(j, 0) + cb * b.get(j, 0) for j in set(a) | set(b)}
        rows.append({j: v for j, v in row.items() if v})
    return rows


def matrix_workload(mod, rows: list[dict], ncols: int) -> int:
    e = mod.Echelon()
    for r in rows:
        if r:
            e.add(mod.to_int_row(r))
    return len(e.nullspace(ncols))


def hom_workload(mod) -> int:
    from siltkit.fixtures import fixture
    from siltkit.algebra import basis

    saved = (linalg.Echelon, linalg.to_int_row, homotopy.Echelon, homotopy.to_int_row)
    linalg.Echelon, linalg.to_int_row = mod.Echelon, mod.to_int_row
    homotopy.Echelon, homotopy.to_int_row = mod.Echelon, mod.to_int_row
    homotopy._HC_CACHE.clear()
    try:
        alg = basis(fixture("kronecker-2"))
        node = homotopy.base_node(alg)
        for step in range(30):
            node = homotopy.left_mutation(alg, node, 1 - step % 2 if step else 1)
        return sum(node.hom_profile.values())
    finally:
        linalg.Echelon, linalg.to_int_row, homotopy.Echelon, homotopy.to_int_row = saved


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    rows = random_rows(rng, args.size)
    kernels = [("python", _echelon_py)]
    if _echelon_c is not None:
        kernels.append(("cython", _echelon_c))
    else:
        print("compiled kernel not available; timing the fallback only")
    results = {}
    for name, mod in kernels:
        check = matrix_workload(mod, rows, args.size), hom_workload(mod)
        t_mat = best_of(lambda: matrix_workload(mod, rows, args.size), args.repeat)
        t_hom = best_of(lambda: hom_workload(mod), args.repeat)
        results[name] = (t_mat, t_hom, check)
        print(f"{name:7s} matrix {t_mat * 1000:9.1f} ms   mutation chain {t_hom * 1000:9.1f} ms   check {check}")
    if len(results) == 2:
        (pm, ph, pc), (cm, ch, cc) = results["python"], results["cython"]
        assert pc == cc, "kernels disagree"
        print(f"speedup  matrix {pm / cm:5.2f}x   mutation chain {ph / ch:5.2f}x")
    print(f"median of per-kernel totals: {statistics.median(sum(r[:2]) for r in results.values()):.3f} s")


if __name__ == "__main__":
    main()
