"""
The three reference initial conditions, the eps-sweep harness against the
eps = 0 fluid-limit run, and the L1/L2 convergence indicators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import StepControl, constraint_ratios, evolve
from .errors import ComparisonError, ConfigurationError
from .grid import ComplexField, Grid, VectorField
from .state import (
    ConstraintRatios,
    SemiclassicalState,
    current_density,
    invariants,
    position_density,
)

__all__ = [
    "CASE_IDS",
    "ExperimentCase",
    "SweepResult",
    "SeriesSample",
    "experiment_case",
    "initial_condition",
    "indicator_l1",
    "indicator_l2",
    "epsilon_sweep",
    "constraint_series",
]

CASE_IDS = ("near_zero_current", "nonzero_current", "sign_changing")

_CASE_ALPHA = {
    "near_zero_current": 1e-10,
    "nonzero_current": 1e-2,
    "sign_changing": 1e-2,
}


@dataclass(frozen=True)
class ExperimentCase:
    """One of the three reference setups on a square domain of side L."""

    case_id: str
    alpha: float
    L: float = 0.5
    n: int = 50
    # Only meaningful for sign_changing: half-distance between the two
    # Gaussian bumps along x, as a fraction handled in absolute units.
    sign_change_offset: float = 0.5 / 8

    def __post_init__(self):
        if self.case_id not in CASE_IDS:
            raise ConfigurationError(
                f"unknown case {self.case_id!r}; expected one of {CASE_IDS}"
            )

    def grid(self) -> Grid:
        return Grid(L=self.L, n=self.n)


def experiment_case(
    case_id: str,
    L: float = 0.5,
    n: int = 50,
    alpha: float | None = None,
    sign_change_offset: float | None = None,
) -> ExperimentCase:
    """Build a case with the published default parameters."""
    if case_id not in CASE_IDS:
        raise ConfigurationError(
            f"unknown case {case_id!r}; expected one of {CASE_IDS}"
        )
    if alpha is None:
        alpha = _CASE_ALPHA[case_id]
    if sign_change_offset is None:
        sign_change_offset = L / 8
    return ExperimentCase(
        case_id=case_id,
        alpha=alpha,
        L=L,
        n=n,
        sign_change_offset=sign_change_offset,
    )


def _velocity_profile(grid: Grid, L: float):
    """(f, g) = Gaussian envelope times (sin(10 x), cos(10 x))."""
    X, Y = grid.meshgrid()
    env = np.exp(-80.0 * ((X - L / 2) ** 2 + (Y - L / 2) ** 2))
    return env * np.sin(10.0 * X), env * np.cos(10.0 * X)


def initial_condition(c: ExperimentCase, grid: Grid, eps: float) -> SemiclassicalState:
    if grid.L != c.L:
        raise ConfigurationError(
            f"grid side {grid.L} does not match case side {c.L}"
        )
    X, Y = grid.meshgrid()
    L = c.L
    if c.case_id in ("near_zero_current", "nonzero_current"):
        env = np.exp(-80.0 * ((X - L / 2) ** 2 + (Y - L / 2) ** 2))
        a = env * (1.0 + 1.0j)
    else:
        # Two narrow bumps of opposite sign offset along x: the amplitude
        # crosses zero, putting vacuum inside the domain.
        d = c.sign_change_offset
        bump_r = np.exp(-320.0 * ((X - (L / 2 + d)) ** 2 + (Y - L / 2) ** 2))
        bump_l = np.exp(-320.0 * ((X - (L / 2 - d)) ** 2 + (Y - L / 2) ** 2))
        a = (bump_r - bump_l) * (1.0 + 1.0j)
    f, g = _velocity_profile(grid, L)
    return SemiclassicalState(
        a=ComplexField(grid, a),
        v=VectorField(grid, c.alpha * f, c.alpha * g),
        t=0.0,
        eps=eps,
    )


def _check_comparable(s_eps: SemiclassicalState, s_0: SemiclassicalState) -> None:
    if s_eps.grid != s_0.grid:
        raise ComparisonError("states live on different grids")
    if abs(s_eps.t - s_0.t) > 1e-9:
        raise ComparisonError(
            f"states are at different times ({s_eps.t} vs {s_0.t})"
        )


def indicator_l1(s_eps: SemiclassicalState, s_0: SemiclassicalState) -> float:
    """L1 distance of the quadratic observables (density plus current)."""
    _check_comparable(s_eps, s_0)
    h2 = s_eps.grid.h ** 2
    drho = position_density(s_eps).values - position_density(s_0).values
    je, j0 = current_density(s_eps), current_density(s_0)
    return h2 * float(
        np.sum(np.abs(drho))
        + np.sum(np.abs(je.comp_x - j0.comp_x))
        + np.sum(np.abs(je.comp_y - j0.comp_y))
    )


def indicator_l2(s_eps: SemiclassicalState, s_0: SemiclassicalState) -> float:
    """L2 distance of the unknowns themselves (amplitude plus velocity)."""
    _check_comparable(s_eps, s_0)
    h2 = s_eps.grid.h ** 2
    da = s_eps.a.values - s_0.a.values
    a_norm = np.sqrt(h2 * float(np.sum(np.abs(da) ** 2)))
    dvx = s_eps.v.comp_x - s_0.v.comp_x
    dvy = s_eps.v.comp_y - s_0.v.comp_y
    v_norm = np.sqrt(h2 * float(np.sum(dvx ** 2 + dvy ** 2)))
    return a_norm + v_norm


@dataclass(frozen=True)
class SweepResult:
    """Indicator values per eps at final time T, with fitted log-log slopes."""

    eps_values: tuple[float, ...]
    l1_indicator: tuple[float, ...]
    l2_indicator: tuple[float, ...]
    slope_l1: float | None
    slope_l2: float | None
    T: float


def _loglog_slope(eps_values, indicators) -> float | None:
    if len(eps_values) < 2:
        return None
    coeffs = np.polyfit(np.log(np.asarray(eps_values)), np.log(np.asarray(indicators)), 1)
    return float(coeffs[0])


def epsilon_sweep(
    c: ExperimentCase,
    eps_list,
    T: float,
    ctrl: StepControl,
) -> SweepResult:
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise ConfigurationError("eps_list must be nonempty")
    if any(e <= 0 for e in eps_list):
        raise ConfigurationError(
            "eps_list entries must be positive; the eps=0 reference runs implicitly"
        )
    eps_list = sorted(eps_list)
    grid = c.grid()
    s_ref = evolve(initial_condition(c, grid, eps=0.0), ctrl, T)
    l1, l2 = [], []
    for eps in eps_list:
        s_eps = evolve(initial_condition(c, grid, eps=eps), ctrl, T)
        l1.append(indicator_l1(s_eps, s_ref))
        l2.append(indicator_l2(s_eps, s_ref))
    return SweepResult(
        eps_values=tuple(eps_list),
        l1_indicator=tuple(l1),
        l2_indicator=tuple(l2),
        slope_l1=_loglog_slope(eps_list, l1),
        slope_l2=_loglog_slope(eps_list, l2),
        T=T,
    )


@dataclass(frozen=True)
class SeriesSample:
    """One sampled point of the constraint history."""

    step: int
    t: float
    ratios: ConstraintRatios
    # Per component: whether the momentum projection was actually applied
    # (False when the guard skipped it, so the raw ratio may drift).
    momentum_projected: tuple[bool, bool]


def constraint_series(
    c: ExperimentCase,
    eps: float,
    T: float,
    ctrl: StepControl,
    stride: int = 1,
) -> list[SeriesSample]:
    s0 = initial_condition(c, c.grid(), eps=eps)
    ref = invariants(s0)
    applied = tuple(
        ctrl.project_momentum and abs(ref.i3[j]) >= ctrl.momentum_guard
        for j in range(2)
    )
    samples = [
        SeriesSample(step=0, t=0.0, ratios=constraint_ratios(s0, ref), momentum_projected=applied)
    ]

    def _observe(record):
        samples.append(
            SeriesSample(
                step=record.step,
                t=record.after.t,
                ratios=record.ratios,
                momentum_projected=applied,
            )
        )

    evolve(s0, ctrl, T, observers=[_observe], stride=stride)
    return samples
