"""Compare the compiled and pure-Python evaluation kernels.

    python3 benchmarks/bench_kernel.py [--size N] [--repeat R]
"""
import argparse
import time

from peanokit import evaluator
from peanokit.library import stdlib


def workloads(size):
    prog = stdlib()
    mul, isqrt = prog.compiled("mul"), prog.compiled("isqrt")
    grid = [(x, y) for x in range(size + 1) for y in range(size + 1)]
    return {
        "mul grid, step by step": lambda b: [mul.run(a, 10**9, jets=False, backend=b)
                                             for a in grid],
        "mul grid, jets": lambda b: [mul.run(a, 10**9, backend=b) for a in grid],
        "isqrt sweep, jets": lambda b: [isqrt.run((x,), 10**12, backend=b)
                                        for x in range(size * size + 1)],
    }


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if evaluator._ckernel is not None else [])
    print(f"{'workload':28} {'backend':8} {'seconds':>9} {'steps':>12}")
    for name, fn in workloads(args.size).items():
        results = {}
        for b in backends:
            secs, out = best_of(lambda: fn(b), args.repeat)
            results[b] = out
            steps = sum(o.consumed for o in out)
            print(f"{name:28} {b:8} {secs:9.4f} {steps:12d}")
        if len(results) == 2:
            assert results["python"] == results["cython"], "kernels disagree"


if __name__ == "__main__":
    main()
