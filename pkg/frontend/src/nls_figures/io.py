"""Readers for the solver CLI's three CSV formats.

These parse the on-disk contract only — a grid-field table with a
`# grid ...` header, a constraint time series with an `# eps=... case=...`
header, and an eps-sweep table with a slope footer. Nothing here imports the
solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FigureInputError

__all__ = [
    "FieldData",
    "ConstraintSeries",
    "SweepData",
    "read_field_csv",
    "read_constraints_csv",
    "read_sweep_csv",
]


@dataclass(frozen=True)
class FieldData:
    """One scalar field on an n-by-n periodic grid of side L at time t."""

    name: str
    n: int
    L: float
    t: float
    values: np.ndarray  # shape (n, n), row = y, column = x


@dataclass(frozen=True)
class ConstraintSeries:
    """Mass/energy/momentum ratios sampled along one run."""

    eps: float
    case: str
    t: np.ndarray
    j1: np.ndarray
    j2: np.ndarray
    j3x: np.ndarray
    j3y: np.ndarray


@dataclass(frozen=True)
class SweepData:
    """Indicator-vs-eps table plus the fitted slopes from the footer.

    slope_l1_text / slope_l2_text are the footer's literal decimal strings,
    kept verbatim so annotations can match the file exactly.
    """

    eps: np.ndarray
    indicator_l1: np.ndarray
    indicator_l2: np.ndarray
    slope_l1_text: str
    slope_l2_text: str

    @property
    def slope_l1(self) -> float:
        return float(self.slope_l1_text)

    @property
    def slope_l2(self) -> float:
        return float(self.slope_l2_text)


def _read_lines(path) -> list[str]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FigureInputError(path, f"cannot read ({exc.strerror})") from exc
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FigureInputError(path, "file is empty")
    return lines


def read_field_csv(path) -> FieldData:
    lines = _read_lines(path)
    header = lines[0]
    if not header.startswith("# grid "):
        raise FigureInputError(path, "missing '# grid' header")
    try:
        meta = dict(item.split("=", 1) for item in header[len("# grid "):].split())
        n = int(meta["n"])
        L = float(meta["L"])
        t = float(meta["t"])
        name = meta["field"]
    except (KeyError, ValueError) as exc:
        raise FigureInputError(path, f"bad grid header {header!r}") from exc
    rows = lines[1:]
    if len(rows) != n:
        raise FigureInputError(path, f"expected {n} data rows, found {len(rows)}")
    try:
        values = np.array([[float(v) for v in row.split(",")] for row in rows])
    except ValueError as exc:
        raise FigureInputError(path, "non-numeric cell in field table") from exc
    if values.shape != (n, n):
        raise FigureInputError(path, f"expected {n}x{n} cells, got {values.shape}")
    return FieldData(name=name, n=n, L=L, t=t, values=values)


_CONSTRAINT_COLUMNS = "step,t,j1,j2,j3x,j3y,mom_proj_x,mom_proj_y"


def read_constraints_csv(path) -> ConstraintSeries:
    lines = _read_lines(path)
    if not lines[0].startswith("# "):
        raise FigureInputError(path, "missing '# eps=... case=...' header")
    try:
        meta = dict(item.split("=", 1) for item in lines[0][2:].split())
        eps = float(meta["eps"])
        case = meta["case"]
    except (KeyError, ValueError) as exc:
        raise FigureInputError(path, f"bad series header {lines[0]!r}") from exc
    if len(lines) < 3 or lines[1] != _CONSTRAINT_COLUMNS:
        raise FigureInputError(path, "missing or unexpected column line")
    try:
        table = np.array(
            [[float(v) for v in row.split(",")] for row in lines[2:]]
        )
    except ValueError as exc:
        raise FigureInputError(path, "non-numeric cell in series table") from exc
    if table.shape[1] != 8:
        raise FigureInputError(path, f"expected 8 columns, got {table.shape[1]}")
    return ConstraintSeries(
        eps=eps,
        case=case,
        t=table[:, 1],
        j1=table[:, 2],
        j2=table[:, 3],
        j3x=table[:, 4],
        j3y=table[:, 5],
    )


def read_sweep_csv(path) -> SweepData:
    lines = _read_lines(path)
    if lines[0] != "eps,indicator_l1,indicator_l2":
        raise FigureInputError(path, "missing sweep header line")
    if not lines[-1].startswith("# slope_l1="):
        raise FigureInputError(path, "missing slope footer")
    try:
        footer = dict(item.split("=", 1) for item in lines[-1][2:].split())
        slope_l1_text = footer["slope_l1"]
        slope_l2_text = footer["slope_l2"]
        float(slope_l1_text), float(slope_l2_text)
    except (KeyError, ValueError) as exc:
        raise FigureInputError(path, f"bad slope footer {lines[-1]!r}") from exc
    try:
        table = np.array(
            [[float(v) for v in row.split(",")] for row in lines[1:-1]]
        )
    except ValueError as exc:
        raise FigureInputError(path, "non-numeric cell in sweep table") from exc
    if table.size == 0 or table.shape[1] != 3:
        raise FigureInputError(path, "sweep table must have rows of 3 columns")
    return SweepData(
        eps=table[:, 0],
        indicator_l1=table[:, 1],
        indicator_l2=table[:, 2],
        slope_l1_text=slope_l1_text,
        slope_l2_text=slope_l2_text,
    )
