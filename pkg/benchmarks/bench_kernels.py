"""Compiled kernels against the pure-Python fallback.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``
"""

import argparse
import timeit

import numpy as np

from rescycle._kernels import _fallback

try:
    from rescycle._kernels import _core
except ImportError:  # extension not built
    _core = None


def cases():
    rng = np.random.default_rng(0)
    walk = np.cumsum(rng.normal(size=1154))
    w = np.ones_like(walk)
    yield "local_linear n=1154 span=4", lambda m: m.local_linear(walk, 4, w)
    long = np.cumsum(rng.normal(size=20000))
    yield "local_linear n=20000 span=25", lambda m: m.local_linear(long, 25, np.ones_like(long))
    for n in (62, 500, 2000):
        x = np.sort((1 - rng.random(n)) ** (-1 / 1.5))
        yield f"powerlaw_scan pareto n={n}", lambda m, x=x: m.powerlaw_scan(x)
    x = np.sort(np.abs(rng.normal(size=2000)))
    yield "powerlaw_scan half-normal n=2000", lambda m: m.powerlaw_scan(x)


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<36}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, call in cases():
        py = best_time(lambda: call(_fallback), args.repeat)
        if _core is None:
            print(f"{name:<36}{py * 1e3:>10.3f}ms{'n/a':>12}{'':>10}")
            continue
        cy = best_time(lambda: call(_core), args.repeat)
        print(f"{name:<36}{py * 1e3:>10.3f}ms{cy * 1e3:>10.3f}ms{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
