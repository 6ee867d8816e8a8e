"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from disco import _pykernels

try:
    from disco import _ckernels
except ImportError:
    _ckernels = None


def workload(size: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size, dtype=np.uint8)
    b = rng.integers(0, 2, size, dtype=np.uint8)
    n_iv = max(1, size // 50)
    starts = np.sort(rng.integers(0, size - 40, n_iv)).astype(np.int64)
    ends = starts + rng.integers(1, 40, n_iv)
    word_starts = np.arange(0, size, 6, dtype=np.int64)
    word_ends = np.minimum(word_starts + 5, size).astype(np.int64)
    return a, b, starts, ends, word_starts, word_ends


def bench(mod, data, repeat: int):
    a, b, starts, ends, ws, we = data
    out = np.zeros(len(a), dtype=np.uint8)
    cases = {
        "contingency": lambda: mod.contingency(a, b),
        "paint": lambda: mod.paint(out, starts, ends),
        "word_hits": lambda: mod.word_hits(a, ws, we),
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=1_000_000, help="characters in the coding vectors")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    data = workload(args.size)
    py = bench(_pykernels, data, args.repeat)
    cy = bench(_ckernels, data, args.repeat) if _ckernels else None
    print(f"size={args.size:,}  best of {args.repeat}")
    print(f"{'kernel':<12} {'python (ms)':>12} {'cython (ms)':>12} {'speed-up':>9}")
    for name, t in py.items():
        if cy:
            print(f"{name:<12} {t * 1e3:12.2f} {cy[name] * 1e3:12.3f} {t / cy[name]:8.0f}x")
        else:
            print(f"{name:<12} {t * 1e3:12.2f} {'n/a':>12} {'':>9}")


if __name__ == "__main__":
    main()
