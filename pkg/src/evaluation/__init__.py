from src.evaluation.property_matrix import (
    GOLDEN_COLUMNS,
    MATRIX_COLUMNS,
    MATRIX_ROWS,
    assemble_matrix,
    compare_with_golden,
    load_golden,
    property_matrix,
    render_matrix,
)

__all__ = [
    "GOLDEN_COLUMNS",
    "MATRIX_COLUMNS",
    "MATRIX_ROWS",
    "assemble_matrix",
    "compare_with_golden",
    "load_golden",
    "property_matrix",
    "render_matrix",
]
