"""Time the numba and numpy backends of the hot kernels side by side.

    python benchmarks/bench_kernels.py [--primes 31 53 97] [--repeat 3]

Both backends are called directly through ``kernels.IMPLEMENTATIONS`` so
one process can compare them; outputs are checked for equality. Run with
``NSCARTAN_NO_NUMBA=1`` to see the numpy path alone (the numba column is
then skipped).
"""
import argparse
import time

import numpy as np

from nscartan import _accel, kernels
from nscartan.ellcurve import WeierstrassCurve
from nscartan.finite_algebra import build_ext_field
from nscartan.gl2 import Mat2, build_cartan


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(a, b):
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(primes, fields):
    for p in primes:
        ctx = build_cartan(p)
        H = np.array([m.entries() for m in ctx.cartan_elements()], dtype=np.int64)
        yield f"greedy_cosets p={p}", "greedy_cosets", (p, H, kernels.SCAN_ROW)
        reps = ctx.coset_reps()
        x = np.array(Mat2(0, -1, 1, 1, p).entries(), dtype=np.int64)
        yield f"count_fixed p={p}", "count_fixed", (reps, x, p, ctx.alpha, False)
    for q, r in fields:
        F = build_ext_field(q, r)
        E = WeierstrassCurve.from_ints(F, (0, 0, 1, 1, 1)) if q == 2 else WeierstrassCurve.short(F, 1, 1)
        args = (np.asarray(E.coeffs, dtype=np.int64), F.char, F.degree, F.exp, F.log, F.trace_table, F.neg_table)
        yield f"count_xscan F_{F.order}", "count_xscan", args
        if F.order <= 4096:
            yield f"count_bruteforce F_{F.order}", "count_bruteforce", args


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[31, 53, 97])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numba", "numpy"] if _accel.HAVE_NUMBA else ["numpy"]
    fields = [(2, 12), (3, 8), (2, 16)]

    header = f"{'kernel':28}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(f"active backend: {_accel.backend()}")
    print(header)
    for label, name, call_args in cases(args.primes, fields):
        times, outs = [], []
        for b in backends:
            fn = kernels.IMPLEMENTATIONS[b][name]
            fn(*call_args)  # compile / warm up
            t, out = timed(lambda: fn(*call_args), args.repeat)
            times.append(t)
            outs.append(out)
        if len(outs) == 2 and not _same(*outs):
            raise SystemExit(f"backends disagree on {label}")
        row = f"{label:28}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
