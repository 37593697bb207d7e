"""Figure generation for the semiclassical NLS solver's CSV outputs."""

from .errors import FigureInputError
from .io import (
    ConstraintSeries,
    FieldData,
    SweepData,
    read_constraints_csv,
    read_field_csv,
    read_sweep_csv,
)
from .render import render_heatmap, render_loglog, render_series

__all__ = [
    "FigureInputError",
    "ConstraintSeries",
    "FieldData",
    "SweepData",
    "read_constraints_csv",
    "read_field_csv",
    "read_sweep_csv",
    "render_heatmap",
    "render_loglog",
    "render_series",
]

__version__ = "0.1.0"
