import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankproj import attribute_contributions, load_csv, normalize
from rankproj.data import export_normalized_csv
from rankproj.errors import InvalidParameterError, ParseError

from conftest import make_dataset


def test_load_csv_basic_shape():
    ds = load_csv("label,a,b\nx,1,4\ny,2,5\nz,3,6\n")
    assert ds.n_items == 3
    assert ds.attribute_names == ("a", "b")
    assert ds.item_ids == ("x", "y", "z")


def test_load_csv_minmax_normalization():
    ds = load_csv("label,v\nx,10\ny,20\nz,30\n")
    assert ds.normalized[:, 0].tolist() == [0.0, 0.5, 1.0]


def test_load_csv_constant_column_flagged():
    ds = load_csv("label,v,w\nx,5,1\ny,5,2\nz,5,3\n")
    assert ds.normalized[:, 0].tolist() == [0.0, 0.0, 0.0]
    assert ds.constant_attributes == ("v",)


def test_load_csv_non_numeric_cell_names_position():
    with pytest.raises(ParseError) as exc:
        load_csv("label,a,b\nx,1,2\ny,oops,3\n")
    assert exc.value.row == 3
    assert exc.value.column == 2


def test_load_csv_duplicate_labels_get_suffixes():
    ds = load_csv("label,a\ndup,1\ndup,2\nother,3\n")
    assert ds.item_ids == ("dup", "dup-2", "other")
    assert [it.label for it in ds.items] == ["dup", "dup", "other"]


def test_load_csv_empty_input():
    with pytest.raises(ParseError):
        load_csv("")


def test_load_csv_rejects_non_finite():
    with pytest.raises(ParseError):
        load_csv("label,a\nx,inf\n")


def test_load_csv_custom_delimiter_and_scientific_notation():
    ds = load_csv("label;a\nx;1e-3\ny;2E-3\n", delimiter=";")
    assert ds.items[0].raw_values == (0.001,)


def test_normalize_identity_on_unit_range():
    out = normalize(np.array([[0.0], [1.0]]))
    assert out[:, 0].tolist() == [0.0, 1.0]


def test_normalize_affine():
    out = normalize(np.array([[-2.0], [0.0], [2.0]]))
    assert out[:, 0].tolist() == [0.0, 0.5, 1.0]


def test_normalize_random_columns_bounds_and_extremes():
    rng = np.random.default_rng(11)
    raw = rng.normal(0, 50, size=(40, 100))
    out = normalize(raw)
    assert out.min() >= 0.0 and out.max() <= 1.0
    assert np.allclose(out.min(axis=0), 0.0)
    assert np.allclose(out.max(axis=0), 1.0)
    # direct recomputation, column by column
    for j in range(raw.shape[1]):
        col = raw[:, j]
        expected = (col - col.min()) / (col.max() - col.min())
        assert np.allclose(out[:, j], expected)


def test_normalize_idempotent():
    rng = np.random.default_rng(5)
    raw = rng.uniform(-10, 10, size=(15, 6))
    once = normalize(raw)
    assert np.array_equal(normalize(once), once)


# Integer-valued inputs keep gaps far above float resolution after the
# affine map; raw floats closer than one ulp of the range can collapse.
@given(
    st.lists(st.integers(min_value=-(10**6), max_value=10**6), min_size=2, max_size=30, unique=True)
)
def test_normalize_preserves_strict_order(column):
    column = [float(v) for v in column]
    out = normalize(np.array(column)[:, None])[:, 0]
    order = np.argsort(column)
    assert all(
        out[a] < out[b] for a, b in zip(order, order[1:])
    )


def test_contributions_zero_weights():
    ds = make_dataset(10, 3, seed=1)
    contrib = attribute_contributions(ds, np.zeros(3))
    assert not contrib.any()


def test_contributions_unit_vector_selects_column():
    ds = make_dataset(10, 3, seed=1)
    e1 = np.array([0.0, 1.0, 0.0])
    contrib = attribute_contributions(ds, e1)
    assert np.array_equal(contrib[:, 1], ds.normalized[:, 1])
    assert not contrib[:, [0, 2]].any()


def test_contribution_rows_sum_to_scores():
    ds = make_dataset(25, 5, seed=2)
    rng = np.random.default_rng(9)
    w = rng.normal(size=5)
    contrib = attribute_contributions(ds, w)
    for i in range(ds.n_items):
        independent = sum(float(w[j]) * float(ds.normalized[i, j]) for j in range(5))
        assert abs(contrib[i].sum() - independent) < 1e-12


def test_contributions_length_mismatch():
    ds = make_dataset(5, 3)
    with pytest.raises(InvalidParameterError):
        attribute_contributions(ds, np.ones(4))


def test_export_normalized_csv_roundtrip():
    ds = make_dataset(8, 3, seed=4)
    text = export_normalized_csv(ds)
    lines = text.strip().split("\n")
    assert lines[0] == "label," + ",".join(ds.attribute_names)
    values = [list(map(float, line.split(",")[1:])) for line in lines[1:]]
    assert np.array_equal(np.array(values), ds.normalized)


def test_dataset_is_immutable():
    ds = make_dataset(5, 2)
    with pytest.raises(ValueError):
        ds.normalized[0, 0] = 5.0
