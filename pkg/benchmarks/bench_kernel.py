"""Compare the compiled sweep kernel against the pure-Python twin on the
oracle workloads that dominate real runs. With no compiled extension the
script still works and simply reports the pure timings.

Usage: python3 benchmarks/bench_kernel.py [--repeats N]
"""

import argparse
import time

from typirank import kernel, oracle
from typirank.parse import parse_kb, parse_query

FABRIZIO = """
mode plain.
T(Worker) <= ReachableAtOffice.
T(SmartWorker) <= ~ReachableAtOffice.
SmartWorker <= Worker.
fabrizio : Worker.
fabrizio : some HasColleague. SmartWorker.
"""

CHAIN = """
mode plain.
T(A) <= some r. B.
T(B) <= ~A.
x : A.
"""

WORKLOADS = [
    ("entails, colleague KB, bound 3",
     FABRIZIO, "fabrizio : some HasColleague. ~ReachableAtOffice", 3,
     oracle.oracle_entails),
    ("min-canonical, colleague KB, bound 3",
     FABRIZIO, "fabrizio : some HasColleague. ~ReachableAtOffice", 3,
     oracle.oracle_min_canonical_entails),
    ("min-canonical, role chain, bound 3",
     CHAIN, "x : some r. B", 3,
     oracle.oracle_min_canonical_entails),
]


def best_of(fn, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    rows = []
    for label, text, query, bound, entry in WORKLOADS:
        kb, q = parse_kb(text), parse_query(query)
        run = lambda: entry(kb, q, bound)
        if kernel.COMPILED:
            t_c, r_c = best_of(run, args.repeats)
        else:
            t_c = r_c = None
        prev = kernel.force_pure()
        try:
            t_p, r_p = best_of(run, args.repeats)
        finally:
            kernel.restore(prev)
        def verdict(r):
            if hasattr(r, "verdict"):
                return (r.verdict, r.entailed)
            return r.countermodel is None
        if r_c is not None and verdict(r_c) != verdict(r_p):
            raise SystemExit(f"kernel disagreement on {label!r}")
        rows.append((label, t_c, t_p))

    width = max(len(r[0]) for r in rows)
    if not kernel.COMPILED:
        print("compiled kernel not present; pure-Python timings only\n")
    for label, t_c, t_p in rows:
        line = f"{label:<{width}}  pure {t_p * 1000:9.1f} ms"
        if t_c is not None:
            line += f"  compiled {t_c * 1000:9.1f} ms  ({t_p / t_c:5.1f}x)"
        print(line)


if __name__ == "__main__":
    main()
