"""Compare the compiled table kernels with the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--orders 16 48 512]

Each row times one kernel on one loop with both backends and checks that the
results agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from extraloop import kernels
from extraloop.catalog import census48_entries, example512_entry, loop960_entry
from extraloop.extension import cayley_loop

LOOPS = {
    16: lambda: cayley_loop(verify=False),
    48: lambda: census48_entries()[0].loop,
    512: lambda: example512_entry().loop,
    960: lambda: loop960_entry().loop,
}


def _cases(L):
    T, LD, RD = L.table, L.ld, L.rd
    return {
        "is_latin": lambda k: k.is_latin(T),
        "extra identity": lambda k: k.find_identity_failure(T, kernels.EXTRA1),
        "moufang identity": lambda k: k.find_identity_failure(T, kernels.MOUFANG),
        "cc check": lambda k: k.find_cc_failure(T, LD, RD),
        "nucleus": lambda k: k.nucleus_mask(T),
        "associator values": lambda k: k.associator_value_mask(T, LD),
        "normal closure": lambda k: k.normal_closure(T, LD, RD, [L.n - 1]),
    }


def _time(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        # masks come back as bool from one backend and uint8 from the other
        return np.array_equal(np.asarray(a).astype(np.int64), np.asarray(b).astype(np.int64))
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--orders", type=int, nargs="+", default=[16, 48, 512],
                    choices=sorted(LOOPS))
    args = ap.parse_args(argv)

    if "compiled" not in kernels.available():
        print("compiled kernels are not built; only the fallback can run")
        return 1
    py, cy = kernels.backend("python"), kernels.backend("compiled")
    print(f"{'n':>5}  {'kernel':<18} {'python s':>10} {'compiled s':>11} {'speedup':>8}  agree")
    mismatches = 0
    for n in args.orders:
        L = LOOPS[n]()
        for name, case in _cases(L).items():
            tp, rp = _time(lambda: case(py), args.repeat)
            tc, rc = _time(lambda: case(cy), args.repeat)
            ok = _same(rp, rc)
            mismatches += not ok
            print(f"{n:>5}  {name:<18} {tp:>10.4f} {tc:>11.4f} {tp / max(tc, 1e-9):>7.1f}x  {ok}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
