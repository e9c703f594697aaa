"""Compare the compiled and pure-Python kernels on the workloads the oracles hit.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per workload with the best-of-N time for each backend and the
speedup.  Both backends must produce identical results; a mismatch aborts.
"""
import argparse
import random
import sys
import timeit

from camoca._kernels import _pykernels

try:
    from camoca._kernels import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    rng = random.Random(0)
    # all inputs of length 16 through a random diameter-5 binary rule
    table = [rng.randrange(2) for _ in range(32)]
    yield "evaluate q=2 d=5 n=16 (65536 words)", "evaluate_codes", (table, 2, 5, 16, list(range(1 << 16)))
    table3 = [rng.randrange(3) for _ in range(27)]
    yield "evaluate q=3 d=3 n=9 (19683 words)", "evaluate_codes", (table3, 3, 3, 9, list(range(3**9)))
    # (i + j, 2i + j) mod 64 never repeats a pair, so the scan runs to the end
    n = 64
    a = [(i + j) % n + 1 for i in range(n) for j in range(n)]
    b = [(2 * i + j) % n + 1 for i in range(n) for j in range(n)]
    yield "superposition order 64", "superposition_distinct", (a, b, n)
    yield "latin check order 64", "is_latin_flat", (a, n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'workload':40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, name, call_args in workloads():
        py_fn, c_fn = getattr(_pykernels, name), getattr(_ckernels, name)
        if py_fn(*call_args) != c_fn(*call_args):
            print(f"{label}: backends disagree")
            return 1
        t_py = min(timeit.repeat(lambda: py_fn(*call_args), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: c_fn(*call_args), number=1, repeat=args.repeat))
        print(f"{label:40} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
