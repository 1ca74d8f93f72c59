"""Property matrix over the reference mechanisms.

Each row is one (mechanism, equilibrium) scenario; each column a property
checker. The first three columns have a golden pattern; the fourth (strong
collusion) only feeds the impossibility check.
"""

import json
from collections.abc import Mapping, Sequence
from pathlib import Path

import pandas as pd

from src.core.exceptions import ScenarioGapError
from src.evaluation.checkers import CheckerFactory, ScenarioSetup
from src.models.reports import MatrixRow, PropertyMatrix, PropertyVerdict
from src.models.scenario import ScenarioConfig

MATRIX_ROWS = (
    "C2PA",
    "EIP-1559",
    "P2PA",
    "BoMB-pp",
    "WPB-σval",
    "SR2PA-2PA",
    "BoMB-wpb",
    "SR2PA-1PA",
)
MATRIX_COLUMNS = (
    "off_chain_influence",
    "user_simplicity",
    "miner_simplicity",
    "strong_collusion",
)
GOLDEN_COLUMNS = MATRIX_COLUMNS[:3]
# rows whose label names the equilibrium actually simulated
ROW_ALIASES = {
    "WPB-σval": "WPB-σ0 row, run with users below the reserve bidding their value",
}
COLUMN_TITLES = {
    "off_chain_influence": "off-chain influence proof",
    "user_simplicity": "user simple",
    "miner_simplicity": "miner simple",
    "strong_collusion": "strong collusion proof",
}


def _mark(passed: bool) -> str:
    return "✓" if passed else "✗"


def assemble_matrix(
    results: Mapping[str, tuple[str, Sequence[PropertyVerdict]]],
    columns: Sequence[str] = MATRIX_COLUMNS,
) -> PropertyMatrix:
    """Matrix from verdicts keyed by row label as (scenario name, verdicts).

    Raises:
        ScenarioGapError: a row or one of its column verdicts is missing.
    """
    missing = [label for label in MATRIX_ROWS if label not in results]
    if missing:
        raise ScenarioGapError(f"property matrix rows without a scenario: {missing}")
    rows = []
    for label in MATRIX_ROWS:
        scenario, verdicts = results[label]
        by_name = {verdict.property_name: verdict for verdict in verdicts}
        absent = [column for column in columns if column not in by_name]
        if absent:
            raise ScenarioGapError(f"row {label} ({scenario}) lacks verdicts {absent}")
        rows.append(
            MatrixRow(
                label=label,
                scenario=scenario,
                passed={column: by_name[column].passed for column in columns},
            )
        )
    return PropertyMatrix(columns=list(columns), rows=rows)


def property_matrix(
    scenarios: Sequence[ScenarioConfig], jobs: int | None = None
) -> PropertyMatrix:
    """Run the matrix checkers on every row scenario and assemble the matrix."""
    results = {}
    for config in scenarios:
        if config.matrix_row is None:
            continue
        setup = ScenarioSetup.from_config(config, jobs=jobs)
        verdicts = [CheckerFactory.create(column)(setup) for column in MATRIX_COLUMNS]
        results[config.matrix_row] = (config.name, verdicts)
    return assemble_matrix(results)


def load_golden(path: str | Path) -> dict[str, list[bool]]:
    """Golden rows as label -> marks for ``GOLDEN_COLUMNS``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if list(data["columns"]) != list(GOLDEN_COLUMNS):
        raise ValueError(
            f"golden columns {data['columns']} differ from {list(GOLDEN_COLUMNS)}"
        )
    return {label: list(marks) for label, marks in data["rows"].items()}


def compare_with_golden(
    matrix: PropertyMatrix, golden: Mapping[str, Sequence[bool]]
) -> list[str]:
    """One message per cell that differs from the golden pattern."""
    failures = []
    rows = {row.label: row for row in matrix.rows}
    for label, marks in golden.items():
        if label not in rows:
            failures.append(f"{label}: row missing from the matrix")
            continue
        for column, expected in zip(GOLDEN_COLUMNS, marks, strict=True):
            actual = rows[label].passed[column]
            if actual != expected:
                failures.append(
                    f"{label} / {column}: expected {_mark(expected)}, "
                    f"got {_mark(actual)}"
                )
    return failures


def render_matrix(matrix: PropertyMatrix) -> str:
    """Fixed-width ✓/✗ table, rows in matrix order."""
    table = pd.DataFrame(
        [
            [_mark(row.passed[column]) for column in matrix.columns]
            for row in matrix.rows
        ],
        index=pd.Index([row.label for row in matrix.rows], name="mechanism"),
        columns=[COLUMN_TITLES.get(column, column) for column in matrix.columns],
    )
    notes = [
        f"{row.label}: {ROW_ALIASES[row.label]}"
        for row in matrix.rows
        if row.label in ROW_ALIASES
    ]
    return "\n".join([table.to_string(), *notes]) + "\n"
