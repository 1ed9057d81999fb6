"""Dataset ingestion, validation, and min-max normalization.

A dataset is an immutable bundle of a schema (named numeric attributes,
all "higher is better"), the raw items, and a normalized matrix in
[0, 1]. All downstream math (weights, contributions, projections) runs
on the normalized matrix; raw values are kept for display only.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .errors import InvalidParameterError, ParseError, UnknownItemError

MAXIMIZE = "maximize"


@dataclass(frozen=True)
class Attribute:
    """One column of the schema. Only maximize-direction attributes are
    supported; minimize-style columns must be pre-negated by the caller."""

    name: str
    direction: str = MAXIMIZE
    display_unit: str | None = None

    def __post_init__(self):
        if self.direction != MAXIMIZE:
            raise InvalidParameterError(
                f"unsupported attribute direction {self.direction!r}; only {MAXIMIZE!r} is supported"
            )


@dataclass(frozen=True)
class DataItem:
    id: str
    label: str
    raw_values: tuple[float, ...]

    def __post_init__(self):
        # Coerce numpy scalars so reprs and JSON stay plain floats.
        object.__setattr__(self, "raw_values", tuple(float(v) for v in self.raw_values))


@dataclass(frozen=True)
class Dataset:
    """Immutable after construction; safe to share across threads.

    ``normalized`` is min-max scaled per column. Constant columns map to
    all-zeros and are listed in ``constant_attributes``.
    """

    schema: tuple[Attribute, ...]
    items: tuple[DataItem, ...]
    normalized: np.ndarray = field(repr=False)
    constant_attributes: tuple[str, ...] = ()

    def __post_init__(self):
        names = [a.name for a in self.schema]
        if not names:
            raise InvalidParameterError("schema must have at least one attribute")
        if len(set(names)) != len(names):
            raise InvalidParameterError("attribute names must be unique")
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise InvalidParameterError("item ids must be unique")
        for it in self.items:
            if len(it.raw_values) != len(names):
                raise InvalidParameterError(
                    f"item {it.id!r} has {len(it.raw_values)} values, expected {len(names)}"
                )
            if not all(math.isfinite(v) for v in it.raw_values):
                raise InvalidParameterError(f"item {it.id!r} has non-finite values")
        self.normalized.setflags(write=False)
        object.__setattr__(self, "_index", {it.id: i for i, it in enumerate(self.items)})

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.schema)

    @property
    def n_items(self) -> int:
        return len(self.items)

    @property
    def n_attributes(self) -> int:
        return len(self.schema)

    @property
    def item_ids(self) -> tuple[str, ...]:
        return tuple(it.id for it in self.items)

    def index_of(self, item_id: str) -> int:
        try:
            return self._index[item_id]
        except KeyError:
            raise UnknownItemError(f"unknown item id {item_id!r}") from None

    def row(self, item_id: str) -> np.ndarray:
        return self.normalized[self.index_of(item_id)]


def normalize(raw: np.ndarray) -> np.ndarray:
    """Min-max scale each column to [0, 1]: (v - min) / (max - min).

    A constant column has no spread to encode, so it maps to all-zeros
    instead of dividing by zero.
    """
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 2:
        raise InvalidParameterError("expected a 2-D matrix")
    if not np.all(np.isfinite(raw)):
        raise InvalidParameterError("matrix contains non-finite values")
    lo = raw.min(axis=0)
    hi = raw.max(axis=0)
    span = hi - lo
    out = np.zeros_like(raw)
    live = span > 0
    out[:, live] = (raw[:, live] - lo[live]) / span[live]
    return out


def constant_columns(raw: np.ndarray) -> list[int]:
    raw = np.asarray(raw, dtype=np.float64)
    span = raw.max(axis=0) - raw.min(axis=0)
    return [j for j in range(raw.shape[1]) if span[j] == 0]


def build_dataset(schema: Sequence[Attribute], items: Sequence[DataItem]) -> Dataset:
    """Assemble a Dataset, computing the normalized matrix."""
    if not items:
        raise InvalidParameterError("dataset needs at least one item")
    raw = np.array([it.raw_values for it in items], dtype=np.float64)
    normalized = normalize(raw)
    names = [a.name for a in schema]
    const = tuple(names[j] for j in constant_columns(raw))
    return Dataset(
        schema=tuple(schema),
        items=tuple(items),
        normalized=normalized,
        constant_attributes=const,
    )


def _dedup_ids(labels: list[str]) -> list[str]:
    """Duplicate labels get deterministic '-2', '-3', ... suffixes."""
    taken: set[str] = set()
    ids = []
    for label in labels:
        candidate = label
        n = 1
        while candidate in taken:
            n += 1
            candidate = f"{label}-{n}"
        taken.add(candidate)
        ids.append(candidate)
    return ids


def load_csv(
    source: bytes | str | IO[str],
    *,
    delimiter: str = ",",
    header: bool = True,
) -> Dataset:
    """Parse a CSV stream into a Dataset.

    First column is the item label, remaining columns are numeric
    attributes. With ``header`` the first row names the attributes;
    otherwise names are generated as col_1..col_n. Duplicate labels are
    kept but their ids get deterministic suffixes.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    rows = [r for r in csv.reader(io.StringIO(text), delimiter=delimiter)]
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError("empty CSV input")

    if header:
        head, *body = rows
        if len(head) < 2:
            raise ParseError("need a label column plus at least one attribute", row=1)
        attr_names = [h.strip() for h in head[1:]]
        first_data_row = 2
    else:
        body = rows
        attr_names = [f"col_{j}" for j in range(1, len(rows[0]))]
        first_data_row = 1
    if not body:
        raise ParseError("no data rows")

    schema = tuple(Attribute(name) for name in attr_names)
    labels: list[str] = []
    values: list[tuple[float, ...]] = []
    for i, row in enumerate(body):
        rownum = first_data_row + i
        if len(row) != len(attr_names) + 1:
            raise ParseError(
                f"expected {len(attr_names) + 1} cells, got {len(row)}", row=rownum
            )
        labels.append(row[0].strip())
        parsed = []
        for j, cell in enumerate(row[1:], start=2):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric cell {cell!r}", row=rownum, column=j) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite cell {cell!r}", row=rownum, column=j)
            parsed.append(v)
        values.append(tuple(parsed))

    ids = _dedup_ids(labels)
    items = [DataItem(id=i, label=l, raw_values=v) for i, l, v in zip(ids, labels, values)]
    return build_dataset(schema, items)


def attribute_contributions(dataset: Dataset, weights: np.ndarray) -> np.ndarray:
    """contribution[i][j] = w_j * normalized[i][j].

    Row sums equal the rank scores, which is what makes stacked
    contribution charts add up to the score.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (dataset.n_attributes,):
        raise InvalidParameterError(
            f"weight length {w.shape} does not match attribute count {dataset.n_attributes}"
        )
    return dataset.normalized * w


def export_normalized_csv(dataset: Dataset, *, delimiter: str = ",") -> str:
    """Normalized matrix as CSV, identical column order, label first."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(["label", *dataset.attribute_names])
    for i, item in enumerate(dataset.items):
        writer.writerow([item.label] + [repr(v) for v in dataset.normalized[i].tolist()])
    return buf.getvalue()
