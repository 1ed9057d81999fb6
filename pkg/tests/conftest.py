import numpy as np
import pytest

from rankproj import Attribute, DataItem, build_dataset


def make_dataset(n_items=20, n_attrs=4, seed=0, quality_blend=0.0):
    """Random dataset; quality_blend > 0 mixes in a shared quality
    factor the way correlated institutional metrics behave."""
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0.0, 100.0, size=(n_items, n_attrs))
    if quality_blend > 0:
        quality = rng.uniform(0.0, 100.0, size=n_items)
        raw = quality_blend * quality[:, None] + (1.0 - quality_blend) * raw
    items = [
        DataItem(id=f"item{i:03d}", label=f"item{i:03d}", raw_values=tuple(raw[i]))
        for i in range(n_items)
    ]
    schema = [Attribute(f"attr{j}") for j in range(n_attrs)]
    return build_dataset(schema, items)


@pytest.fixture
def small_dataset():
    """Six hand-made items over three attributes, already spread in [0, 100]."""
    rows = {
        "alpha": (90.0, 80.0, 70.0),
        "bravo": (70.0, 75.0, 60.0),
        "charlie": (55.0, 60.0, 50.0),
        "delta": (40.0, 45.0, 35.0),
        "echo": (25.0, 20.0, 30.0),
        "foxtrot": (0.0, 5.0, 10.0),
    }
    items = [DataItem(id=k, label=k, raw_values=v) for k, v in rows.items()]
    return build_dataset([Attribute(a) for a in ("assets", "growth", "liquidity")], items)


@pytest.fixture
def random_dataset():
    return make_dataset(n_items=30, n_attrs=4, seed=3)
