"""Compiled vs pure-Python elimination on the differentials of larger complexes.

    python benchmarks/bench_rank.py [--repeat N]

Each row times the GF(p) rank of every differential of one complex, once per
kernel, and checks that both kernels return the same ranks.
"""
import argparse
import time

from multipath import _kernels_py, kernels
from multipath.algebra import dual_numbers, truncated_poly
from multipath.complex import build_multipath_complex
from multipath.digraph import Digraph, coherent_line, polygon
from multipath.homology import _csr, _integer_rows, _markowitz_order

P = 2147483647


def complete_digraph(n):
    return Digraph(n, tuple((u, v) for u in range(n) for v in range(n) if u != v))


CASES = [
    ("I_10, K[x]/(x^2)", coherent_line(10), dual_numbers()),
    ("P_9, K[x]/(x^2)", polygon(9), dual_numbers()),
    ("I_7, K[x]/(x^3)", coherent_line(7), truncated_poly(3)),
    ("complete 5-vertex, K[x]/(x^2)", complete_digraph(5), dual_numbers()),
]


def prepared(c):
    out = []
    for d in c.differentials:
        rows, colmap = _markowitz_order(_integer_rows(d))
        if rows:
            out.append((len(colmap), *_csr(rows, colmap, P)))
    return out


def timed(impl, mats, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        ranks = [impl.rank_mod_p(ncols, ip, ix, vals, P) for ncols, ip, ix, vals in mats]
        best = min(best, time.perf_counter() - t0)
    return best, ranks


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.COMPILED:
        raise SystemExit("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
    from multipath import _kernels

    print(f"{'complex':32} {'nnz':>9} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for name, g, a in CASES:
        mats = prepared(build_multipath_complex(g, a))
        nnz = sum(len(m[2]) for m in mats)
        tc, rc = timed(_kernels, mats, args.repeat)
        tp, rp = timed(_kernels_py, mats, args.repeat)
        if rc != rp:
            raise SystemExit(f"{name}: kernels disagree {rc} vs {rp}")
        print(f"{name:32} {nnz:9d} {tc:11.4f} {tp:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
