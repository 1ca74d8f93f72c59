"""Report files written by ``tfmlab run``.

Column orders are fixed; nothing time-dependent is written, so an unchanged
config reproduces its reports byte for byte.
"""

import json
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from src.evaluation.property_matrix import render_matrix
from src.models.reports import PropertyMatrix, ResultRecord

REVENUE_COLUMNS = ["scenario", "n", "mean", "stderr", "reps", "seed"]
INTERIM_COLUMNS = ["v", "x", "p", "se_x", "se_p"]
RANKING_COLUMNS = ["scenario", "rank", "label", "mean", "stderr"]


def write_revenue_curves(records: Sequence[ResultRecord], out_dir: Path) -> Path:
    rows = [point.model_dump() for record in records for point in record.estimates]
    path = out_dir / "revenue_curves.csv"
    pd.DataFrame(rows, columns=REVENUE_COLUMNS).to_csv(path, index=False)
    return path


def write_interim(records: Sequence[ResultRecord], out_dir: Path) -> list[Path]:
    with_interim = [record for record in records if record.interim]
    paths = []
    for record in with_interim:
        for user, rules in sorted(record.interim.items()):
            suffix = "" if len(with_interim) == 1 else f"_{record.scenario_name}"
            path = out_dir / f"interim_{user}{suffix}.csv"
            table = pd.DataFrame(
                {
                    "v": rules.value_grid,
                    "x": rules.x,
                    "p": rules.p,
                    "se_x": rules.se_x,
                    "se_p": rules.se_p,
                },
                columns=INTERIM_COLUMNS,
            )
            table.to_csv(path, index=False)
            paths.append(path)
    return paths


def write_verdicts(records: Sequence[ResultRecord], out_dir: Path) -> Path:
    path = out_dir / "verdicts.jsonl"
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            for verdict in record.verdicts:
                line = {
                    "scenario": record.scenario_name,
                    "scenario_hash": record.scenario_hash,
                    **verdict.model_dump(mode="json"),
                }
                handle.write(json.dumps(line, sort_keys=True, ensure_ascii=False))
                handle.write("\n")
    return path


def write_rankings(records: Sequence[ResultRecord], out_dir: Path) -> Path | None:
    rows = [
        {
            "scenario": record.scenario_name,
            "rank": rank,
            "label": entry.label,
            "mean": entry.mean,
            "stderr": entry.std_err,
        }
        for record in records
        for ranking in record.rankings
        for rank, entry in enumerate(ranking.ranking, start=1)
    ]
    if not rows:
        return None
    path = out_dir / "rankings.csv"
    pd.DataFrame(rows, columns=RANKING_COLUMNS).to_csv(path, index=False)
    return path


def write_matrix(matrix: PropertyMatrix, out_dir: Path) -> Path:
    path = out_dir / "matrix.txt"
    path.write_text(render_matrix(matrix), encoding="utf-8")
    return path


def emit_reports(
    records: Sequence[ResultRecord],
    out_dir: str | Path,
    matrix: PropertyMatrix | None = None,
) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [write_revenue_curves(records, out_dir), write_verdicts(records, out_dir)]
    paths += write_interim(records, out_dir)
    rankings = write_rankings(records, out_dir)
    if rankings is not None:
        paths.append(rankings)
    if matrix is not None:
        paths.append(write_matrix(matrix, out_dir))
    return paths
