"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import statistics
import time

import numpy as np

from modinv import _fallback
from modinv.group import standard_generators
from modinv.poly import Polynomial, _pack
from modinv.verify import monomials

try:
    from modinv import _kernels
except ImportError:
    _kernels = None


def o_product_workload():
    """The 81 linear factors of O t1 over span(t2..t5) at p = 3, multiplied in packed form."""
    p, n = 3, 5
    x1 = Polynomial.var(p, n, 0)
    factors = [x1 + Polynomial.linear(p, (0,) + c) for c in itertools.product(range(p), repeat=n - 1)]
    width = (len(factors)).bit_length()
    packed = [_pack(f, width) for f in factors]

    def run(backend):
        keys, coefs = packed[0]
        for kb, cb in packed[1:]:
            keys, coefs = backend.mul_packed(keys, coefs, kb, cb, p)
        return len(keys)

    return run


def closure_workload():
    gens = np.array([g.rows for g in standard_generators("SL", 3, 5)], dtype=np.int64)

    def run(backend):
        return backend.closure_order(gens, 5, 2_000_000)

    return run


def rank_workload():
    """Macaulay matrix of the SL_3(F_3) invariant generators."""
    from modinv.construct import sl_presentation

    gens = sl_presentation(3, 3).generators
    degs = [g.degree for g in gens]
    D = sum(d - 1 for d in degs) + 1
    cols = monomials(3, D)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g, d in zip(gens, degs):
        for q in monomials(3, D - d):
            row = np.zeros(len(cols), dtype=np.int64)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, q))]] = c
            rows.append(row)
    matrix = np.array(rows)

    def run(backend):
        return backend.rank_mod_p(matrix.copy(), 3)

    return run


def timed(fn, backend, repeat):
    times, result = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - t)
    return statistics.median(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")
    workloads = [
        ("mul_packed: O t1, 81 factors", o_product_workload()),
        ("closure_order: SL_3(F_5)", closure_workload()),
        ("rank_mod_p: Macaulay matrix", rank_workload()),
    ]
    print(f"{'workload':34s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn in workloads:
        slow, r_slow = timed(fn, _fallback, args.repeat)
        if _kernels is None:
            print(f"{name:34s} {'-':>10s} {slow:10.3f}")
            continue
        fast, r_fast = timed(fn, _kernels, args.repeat)
        assert r_fast == r_slow, (name, r_fast, r_slow)
        print(f"{name:34s} {fast:10.3f} {slow:10.3f} {slow / fast:7.1f}x")


if __name__ == "__main__":
    main()
