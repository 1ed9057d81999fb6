"""Batch front door: run the whole pipeline headlessly and emit files.

`rankproj run` writes weights.json, ranking.csv, ratings.csv,
projection.csv, axis.csv, and inconsistencies.csv into --out. Given the
same inputs and seed the files are byte-identical across runs. Exit
codes: 0 ok, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click
import numpy as np

from .axis import build_axis, rating_line
from .consistency import enumerate_inconsistencies, export_report_csv
from .data import load_csv
from .errors import EngineError
from .projection import ProjectionConfig, project_dataset
from .ranking import constraints_from_pairs, rank_all, train_ranking_svm, weight_dict
from .rating import partition_scores

OUTPUT_FILES = (
    "weights.json",
    "ranking.csv",
    "ratings.csv",
    "projection.csv",
    "axis.csv",
    "inconsistencies.csv",
)


def _check_ratings(_ctx, _param, value: int) -> int:
    if value < 2:
        raise click.BadParameter("n must be >= 2")
    return value


@click.group()
def main():
    """Joint ranking/projection analytics engine."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--constraints", "constraints_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--ratings", "n_ratings", default=5, show_default=True, callback=_check_ratings)
@click.option("--method", type=click.Choice(["pca", "tsne"]), default="tsne", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--perplexity", default=15.0, show_default=True)
@click.option("--budget", default=100, show_default=True, help="Max inconsistencies to report.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--force", is_flag=True, help="Overwrite existing output files.")
def run(input_path, constraints_path, n_ratings, method, seed, perplexity, budget, out_dir, force):
    """Run the full pipeline on a CSV dataset."""
    out = Path(out_dir)
    try:
        _run_pipeline(
            Path(input_path),
            Path(constraints_path) if constraints_path else None,
            n_ratings,
            method,
            seed,
            perplexity,
            budget,
            out,
            force,
        )
    except (EngineError, OSError, RuntimeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _run_pipeline(input_path, constraints_path, n_ratings, method, seed, perplexity, budget, out, force):
    out.mkdir(parents=True, exist_ok=True)
    existing = [name for name in OUTPUT_FILES if (out / name).exists()]
    if existing and not force:
        raise RuntimeError(
            f"output files already exist ({', '.join(existing)}); use --force to overwrite"
        )

    dataset = load_csv(input_path.read_bytes())

    if constraints_path is not None:
        pairs = _read_pairs(constraints_path)
        trained = train_ranking_svm(constraints_from_pairs(pairs, dataset))
        weights = np.asarray(trained.w)
    else:
        # No interaction data: every attribute weighs equally.
        weights = np.full(dataset.n_attributes, 1.0 / dataset.n_attributes)

    ranked = rank_all(weights, dataset)
    partition = partition_scores([r.id for r in ranked], [r.score for r in ranked], n_ratings)
    config = ProjectionConfig(method=method, seed=seed, perplexity=perplexity)
    projection = project_dataset(dataset, weights, config)
    polyline = rating_line(partition, projection)
    placements = build_axis(partition, polyline, projection)
    verdicts = enumerate_inconsistencies(
        {r.id: r.score for r in ranked}, projection, budget
    )

    (out / "weights.json").write_text(
        json.dumps(weight_dict(dataset, weights), indent=1) + "\n"
    )
    (out / "ranking.csv").write_text(
        _csv_text(
            ["id", "label", "score", "rank"],
            [
                [r.id, dataset.items[dataset.index_of(r.id)].label, repr(r.score), r.rank]
                for r in ranked
            ],
        )
    )
    (out / "ratings.csv").write_text(
        _csv_text(
            ["id", "score", "rank", "rating"],
            [[r.id, repr(r.score), r.rank, partition.assignment[r.id]] for r in ranked],
        )
    )
    (out / "projection.csv").write_text(
        _csv_text(
            ["id", "x", "y"],
            [
                [i, repr(float(x)), repr(float(y))]
                for i, (x, y) in zip(projection.item_ids, projection.coords)
            ],
        )
    )
    (out / "axis.csv").write_text(
        _csv_text(
            ["id", "arc_position", "distance", "bracket_low", "bracket_high", "inverse_ordinal"],
            [
                [
                    p.item_id,
                    repr(p.arc_position),
                    repr(p.distance),
                    p.bracket[0],
                    p.bracket[1],
                    p.inverse_ordinal,
                ]
                for p in placements
            ],
        )
    )
    (out / "inconsistencies.csv").write_text(export_report_csv(verdicts))
    click.echo(f"wrote {len(OUTPUT_FILES)} files to {out}")


def _read_pairs(path: Path) -> list[tuple[str, str]]:
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0][:2] == ["preferred_id", "other_id"]:
        rows = rows[1:]
    return [(r[0].strip(), r[1].strip()) for r in rows if len(r) >= 2]


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--session-ttl", default=3600.0, show_default=True)
@click.option("--max-rows", default=5000, show_default=True)
def serve(host, port, session_ttl, max_rows):
    """Start the HTTP session API."""
    import uvicorn

    from .service import ServiceConfig, create_app

    uvicorn.run(create_app(ServiceConfig(max_rows=max_rows, session_ttl=session_ttl)), host=host, port=port)


if __name__ == "__main__":
    main()
