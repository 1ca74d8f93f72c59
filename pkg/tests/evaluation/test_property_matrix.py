import json
from pathlib import Path

import pytest

from src.core.exceptions import ScenarioGapError
from src.evaluation.property_matrix import (
    GOLDEN_COLUMNS,
    MATRIX_COLUMNS,
    MATRIX_ROWS,
    assemble_matrix,
    compare_with_golden,
    load_golden,
    render_matrix,
)
from src.models.reports import PropertyVerdict

GOLDEN = Path(__file__).parents[2] / "configs" / "golden" / "table1.json"


def verdicts(*marks: bool) -> list[PropertyVerdict]:
    return [
        PropertyVerdict(
            property_name=column,
            verdict="NO_VIOLATION_FOUND" if passed else "VIOLATION",
            seed=7,
        )
        for column, passed in zip(MATRIX_COLUMNS, marks, strict=True)
    ]


def golden_results() -> dict:
    golden = load_golden(GOLDEN)
    return {
        label: (label.lower(), verdicts(*golden[label], False))
        for label in MATRIX_ROWS
    }


def test_golden_pattern_has_every_row():
    golden = load_golden(GOLDEN)
    assert list(golden) == list(MATRIX_ROWS)
    assert all(len(marks) == len(GOLDEN_COLUMNS) for marks in golden.values())
    assert [label for label, marks in golden.items() if all(marks)] == ["C2PA"]


def test_matching_matrix_has_no_golden_failures():
    matrix = assemble_matrix(golden_results())
    assert compare_with_golden(matrix, load_golden(GOLDEN)) == []
    assert matrix.impossibility_holds


def test_a_flipped_cell_is_reported():
    results = golden_results()
    results["P2PA"] = ("p2pa", verdicts(True, True, True, False))
    failures = compare_with_golden(assemble_matrix(results), load_golden(GOLDEN))
    assert failures == ["P2PA / miner_simplicity: expected ✗, got ✓"]


def test_a_row_passing_every_column_breaks_impossibility():
    results = golden_results()
    results["C2PA"] = ("c2pa", verdicts(True, True, True, True))
    assert not assemble_matrix(results).impossibility_holds


def test_missing_rows_and_verdicts_are_gaps():
    results = golden_results()
    del results["BoMB-wpb"]
    with pytest.raises(ScenarioGapError):
        assemble_matrix(results)
    results = golden_results()
    results["BoMB-wpb"] = ("bomb", verdicts(True, True, True, True)[:3])
    with pytest.raises(ScenarioGapError):
        assemble_matrix(results)


def test_golden_columns_are_checked(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text('{"columns": ["user_simplicity"], "rows": {}}', encoding="utf-8")
    with pytest.raises(ValueError):
        load_golden(path)


def test_render_keeps_row_order():
    text = render_matrix(assemble_matrix(golden_results()))
    lines = text.splitlines()
    assert "off-chain influence proof" in lines[0]
    assert [line.split()[0] for line in lines[2:10]] == list(MATRIX_ROWS)
    assert lines[2].count("✓") == 3
    assert text.endswith("\n")


def test_render_names_the_simulated_winner_pays_bid_equilibrium():
    lines = render_matrix(assemble_matrix(golden_results())).splitlines()
    assert lines[-1].startswith("WPB-σval: WPB-σ0 row")
    assert load_golden(GOLDEN)["WPB-σval"] == [True, False, False]
    aliases = json.loads(GOLDEN.read_text(encoding="utf-8"))["aliases"]
    assert aliases == {"WPB-σval": "WPB-σ0"}
