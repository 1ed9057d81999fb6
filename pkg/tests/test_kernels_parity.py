"""Backend parity: the compiled kernels against the pure fallbacks.

The scalar kernels (polyline projection, triple scan) promise bitwise
agreement; the t-SNE gradient differs only in summation order, so it is
compared to tolerance.
"""

import numpy as np
import pytest

from rankproj._kernels import _pure

try:
    from rankproj._kernels import _native
except ImportError:
    _native = None

needs_native = pytest.mark.skipif(_native is None, reason="compiled kernels unavailable")


@needs_native
def test_polyline_project_bitwise_parity():
    rng = np.random.default_rng(0)
    for _ in range(30):
        n_anchor = int(rng.integers(2, 12))
        ax = rng.uniform(-5, 5, n_anchor)
        ay = rng.uniform(-5, 5, n_anchor)
        px = rng.uniform(-6, 6, 50)
        py = rng.uniform(-6, 6, 50)
        native = _native.polyline_project(px, py, ax, ay)
        pure = _pure.polyline_project(px, py, ax, ay)
        for a, b in zip(native, pure):
            assert np.array_equal(np.asarray(a), np.asarray(b))


@needs_native
def test_triple_scan_bitwise_parity():
    rng = np.random.default_rng(1)
    for _ in range(5):
        n = int(rng.integers(5, 25))
        f = rng.uniform(0, 1, n)
        coords = rng.uniform(0, 1, (n, 2))
        dx = coords[:, 0][:, None] - coords[:, 0][None, :]
        dy = coords[:, 1][:, None] - coords[:, 1][None, :]
        g = np.sqrt(dx * dx + dy * dy)
        assert _native.triple_scan(f, g) == _pure.triple_scan(f, g)


@needs_native
def test_tsne_gradient_close():
    rng = np.random.default_rng(2)
    n = 40
    p = rng.uniform(0, 1, (n, n))
    p = (p + p.T) / 2
    np.fill_diagonal(p, 0.0)
    p /= p.sum()
    y = np.ascontiguousarray(rng.normal(size=(n, 2)))
    g_native = _native.tsne_gradient(np.ascontiguousarray(p), y)
    g_pure = _pure.tsne_gradient(p, y)
    assert np.allclose(g_native, g_pure, rtol=1e-9, atol=1e-12)


def test_pure_backend_selected_by_env(tmp_path):
    import subprocess
    import sys

    code = "import rankproj; print(rankproj.KERNEL_BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "RANKPROJ_PURE": "1"},
        capture_output=True,
        text=True,
    )
    assert out.stdout.strip() == "pure"
