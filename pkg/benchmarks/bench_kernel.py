"""Benchmark the compiled kernel against the pure-Python fallback.

Two representative workloads:
  * weil-d2:    d^2 residual sweep over W(so(5)) (derivation application)
  * transgress: the degree-8 transgression on W(so(5)) (the heaviest
                exact solve in the package)
  * poly-mul:   dense graded product in a mixed-parity algebra

Run:  python3 benchmarks/bench_kernel.py [--repeat N]

Backends are selected through LINF_PURE_PYTHON in a subprocess, so both
runs import a fresh kernel.
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = ("weil-d2", "transgress", "poly-mul")


def run_workload(name: str) -> float:
    import linf  # noqa: F401  (kernel choice happens at import)
    from linf import constructions as cons
    from linf import lie

    t0 = time.perf_counter()
    if name == "weil-d2":
        from fractions import Fraction
        from linf.algebra import Poly
        A = lie.ce_of_lie(lie.so_n(5))
        W, _shift = cons.weil_algebra(A)
        big = Poly(W, {m: Fraction(1) for m in W.graded_component_basis(7)})
        t0 = time.perf_counter()
        for _ in range(3):
            d1 = W.d(big)
            assert W.d(d1).is_zero()
    elif name == "transgress":
        g = lie.so_n(5)
        A = lie.ce_of_lie(g)
        W, shift = cons.weil_algebra(A)
        P8 = lie.invariant_polynomial_str(g, 4)
        triple = cons.transgress(W, shift, P8)
        assert (W.d(triple.cs) - triple.P).is_zero()
    elif name == "poly-mul":
        from linf.algebra import DgcAlgebra
        A = DgcAlgebra.make(
            "bench", [(f"t{i}", 1) for i in range(6)] + [(f"r{i}", 2) for i in range(6)])
        p = A.one()
        for i in range(6):
            p = p * (A.gen(f"t{i}") + A.gen(f"r{i}") + 1)
        q = p * p
        assert not q.is_zero()
    else:
        raise SystemExit(f"unknown workload {name}")
    return time.perf_counter() - t0


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workload", help="run one workload in-process (internal)")
    args = ap.parse_args()

    if args.workload:
        from linf.kernel import BACKEND
        dt = min(run_workload(args.workload) for _ in range(args.repeat))
        print(json.dumps({"backend": BACKEND, "workload": args.workload,
                          "seconds": round(dt, 4)}))
        return 0

    rows = []
    for workload in WORKLOADS:
        timing = {}
        for pure in ("0", "1"):
            env = dict(os.environ, LINF_PURE_PYTHON=pure) if pure == "1" \
                else {k: v for k, v in os.environ.items()
                      if k != "LINF_PURE_PYTHON"}
            out = subprocess.run(
                [sys.executable, __file__, "--workload", workload,
                 "--repeat", str(args.repeat)],
                capture_output=True, text=True, env=env, check=True)
            rec = json.loads(out.stdout)
            timing[rec["backend"]] = rec["seconds"]
        rows.append((workload, timing))
    print(f"{'workload':<12} {'python':>10} {'cython':>10} {'speedup':>9}")
    for workload, timing in rows:
        py = timing.get("python")
        cy = timing.get("cython")
        if cy is None:
            print(f"{workload:<12} {py:>10.3f} {'(not built)':>10}")
        else:
            print(f"{workload:<12} {py:>10.3f} {cy:>10.3f} {py / cy:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
