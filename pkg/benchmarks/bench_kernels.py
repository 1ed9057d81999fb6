"""Benchmark the compiled kernels against the pure fallbacks.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from rankproj._kernels import _pure

try:
    from rankproj._kernels import _native
except ImportError:
    _native = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_tsne_gradient(backend, n=400, seed=0):
    rng = np.random.default_rng(seed)
    p = rng.uniform(0, 1, (n, n))
    p = (p + p.T) / 2
    np.fill_diagonal(p, 0.0)
    p /= p.sum()
    p = np.ascontiguousarray(p)
    y = np.ascontiguousarray(rng.normal(size=(n, 2)))
    return best_of(lambda: backend.tsne_gradient(p, y))


def bench_polyline(backend, n_points=20000, n_anchors=10, seed=1):
    rng = np.random.default_rng(seed)
    px = rng.uniform(0, 1, n_points)
    py = rng.uniform(0, 1, n_points)
    ax = rng.uniform(0, 1, n_anchors)
    ay = rng.uniform(0, 1, n_anchors)
    return best_of(lambda: backend.polyline_project(px, py, ax, ay), repeats=3)


def bench_triple_scan(backend, n=60, seed=2):
    rng = np.random.default_rng(seed)
    f = rng.uniform(0, 1, n)
    coords = rng.uniform(0, 1, (n, 2))
    dx = coords[:, 0][:, None] - coords[:, 0][None, :]
    dy = coords[:, 1][:, None] - coords[:, 1][None, :]
    g = np.sqrt(dx * dx + dy * dy)
    return best_of(lambda: backend.triple_scan(f, g), repeats=3)


def main():
    benches = [
        ("tsne_gradient  (N=400)", bench_tsne_gradient),
        ("polyline_project (20k pts x 9 segs)", bench_polyline),
        ("triple_scan    (N=60 exhaustive)", bench_triple_scan),
    ]
    print(f"{'kernel':<38}{'pure':>12}{'native':>12}{'speedup':>10}")
    for name, bench in benches:
        pure_t = bench(_pure)
        if _native is None:
            print(f"{name:<38}{pure_t * 1e3:>10.2f}ms{'-':>12}{'-':>10}")
            continue
        native_t = bench(_native)
        print(
            f"{name:<38}{pure_t * 1e3:>10.2f}ms{native_t * 1e3:>10.2f}ms"
            f"{pure_t / native_t:>9.1f}x"
        )
    if _native is None:
        print("\ncompiled kernels not built; showing pure timings only")


if __name__ == "__main__":
    main()
