"""braidfig: figure renderer for braidc experiment CSVs."""

__version__ = "0.1.0"

from .render import (CSV_HEADER, FIGURE_IDS, FigureSpec, RenderResult, Row,
                     SchemaError, load_rows, log_log_fit, render,
                     suppression_coefficient)

__all__ = [
    "__version__", "CSV_HEADER", "FIGURE_IDS", "FigureSpec", "RenderResult",
    "Row", "SchemaError", "load_rows", "log_log_fit", "render",
    "suppression_coefficient",
]
