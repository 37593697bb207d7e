"""
Right-hand side of the phase/amplitude system, explicit first-order time
stepping, and the rescaling projections that restore mass and momentum
after every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BlowUpError, DegenerateProjectionError
from .grid import ComplexField, VectorField, diff_x, diff_y, lap
from .state import (
    ConstraintRatios,
    Invariants,
    SemiclassicalState,
    energy,
    invariants,
    mass,
    momentum,
)

__all__ = [
    "Tendency",
    "StepControl",
    "StepRecord",
    "rhs",
    "euler_step",
    "project_mass",
    "project_momentum",
    "advance",
    "evolve",
    "constraint_ratios",
]


@dataclass(frozen=True)
class Tendency:
    """Time derivative of (a, v); the negative of the discrete flux."""

    da: ComplexField
    dv: VectorField


@dataclass(frozen=True)
class StepControl:
    """Time-step and projection policy.

    The time step is cfl_const * h^2 (parabolic scaling, independent of
    eps).  Momentum components whose reference or intermediate integral
    falls below momentum_guard are left unprojected: dividing by a value
    that is zero up to rounding would only amplify noise.
    """

    cfl_const: float = 0.25
    momentum_guard: float = 1e-8
    project_mass: bool = True
    project_momentum: bool = True

    def __post_init__(self):
        if self.cfl_const <= 0:
            raise ValueError(f"cfl_const must be positive, got {self.cfl_const}")
        if self.momentum_guard < 0:
            raise ValueError(f"momentum_guard must be >= 0, got {self.momentum_guard}")

    def time_step(self, h: float) -> float:
        return self.cfl_const * h * h


def _rhs_arrays(s: SemiclassicalState):
    """Raw-array tendency; no finiteness validation (callers decide)."""
    h = s.grid.h
    a = s.a.values
    vx, vy = s.v.comp_x, s.v.comp_y
    rho = a.real ** 2 + a.imag ** 2

    # Momentum equation: dv = -(v . grad) v - grad(rho), centered differences,
    # no upwinding and no added viscosity.
    dvx = -(vx * diff_x(vx, h) + vy * diff_y(vx, h)) - diff_x(rho, h)
    dvy = -(vx * diff_x(vy, h) + vy * diff_y(vy, h)) - diff_y(rho, h)

    # Amplitude equation: da = -v . grad(a) - a div(v)/2 + i (eps/2) lap(a).
    da = -(vx * diff_x(a, h) + vy * diff_y(a, h)) - 0.5 * a * (
        diff_x(vx, h) + diff_y(vy, h)
    )
    if s.eps != 0.0:
        da = da + 0.5j * s.eps * lap(a, h)
    return da, dvx, dvy


def rhs(s: SemiclassicalState) -> Tendency:
    da, dvx, dvy = _rhs_arrays(s)
    return Tendency(
        da=ComplexField(s.grid, da),
        dv=VectorField(s.grid, dvx, dvy),
    )


def euler_step(s: SemiclassicalState, k: float, step: int = 0) -> SemiclassicalState:
    """One explicit step to the pre-projection intermediate state."""
    if k <= 0:
        raise ValueError(f"time step must be positive, got {k}")
    with np.errstate(over="ignore", invalid="ignore"):
        da, dvx, dvy = _rhs_arrays(s)
        a_new = s.a.values + k * da
        vx_new = s.v.comp_x + k * dvx
        vy_new = s.v.comp_y + k * dvy
    if not (
        np.isfinite(a_new).all()
        and np.isfinite(vx_new).all()
        and np.isfinite(vy_new).all()
    ):
        raise BlowUpError(
            f"non-finite values after step {step} (t={s.t!r})", step=step, t=s.t
        )
    return SemiclassicalState(
        a=ComplexField(s.grid, a_new),
        v=VectorField(s.grid, vx_new, vy_new),
        t=s.t + k,
        eps=s.eps,
    )


def project_mass(s_half: SemiclassicalState, i1_0: float) -> SemiclassicalState:
    """Rescale the amplitude so the mass returns to its initial value."""
    m = mass(s_half)
    if m <= 0.0:
        if i1_0 > 0.0:
            raise DegenerateProjectionError(
                "cannot restore positive mass by rescaling a zero-mass state"
            )
        return s_half
    scale = np.sqrt(i1_0 / m)
    return SemiclassicalState(
        a=ComplexField(s_half.grid, scale * s_half.a.values),
        v=s_half.v,
        t=s_half.t,
        eps=s_half.eps,
    )


def project_momentum(
    s: SemiclassicalState, i3_0: tuple[float, float], guard: float
) -> SemiclassicalState:
    """Rescale each velocity component so the momentum returns to i3_0.

    The momentum integral carries an eps-order part that does not scale
    with v; the factor applied to v_j therefore targets the v-carried part
    so that the total lands on i3_0^j exactly.  Components whose reference
    or current integral is below the guard are skipped.
    """
    i3_half = momentum(s)
    # eps-order contribution, unchanged by rescaling v.
    eps_part = momentum(
        SemiclassicalState(
            a=s.a,
            v=VectorField(s.grid, np.zeros_like(s.v.comp_x), np.zeros_like(s.v.comp_y)),
            t=s.t,
            eps=s.eps,
        )
    )
    comps = [s.v.comp_x, s.v.comp_y]
    out = []
    for j in range(2):
        carried = i3_half[j] - eps_part[j]
        if abs(i3_0[j]) >= guard and abs(i3_half[j]) >= guard and abs(carried) >= guard:
            out.append(comps[j] * ((i3_0[j] - eps_part[j]) / carried))
        else:
            out.append(comps[j])
    return SemiclassicalState(
        a=s.a,
        v=VectorField(s.grid, out[0], out[1]),
        t=s.t,
        eps=s.eps,
    )


def advance(
    s: SemiclassicalState,
    ctrl: StepControl,
    ref: Invariants | None = None,
    k: float | None = None,
    step: int = 0,
) -> SemiclassicalState:
    """One full step: explicit update, then mass and momentum projections.

    The reference invariants default to those of the input state; a time
    loop should compute them once from the initial condition and pass them
    in so rounding does not accumulate across steps.
    """
    if ref is None:
        ref = invariants(s)
    if k is None:
        k = ctrl.time_step(s.grid.h)
    s_next = euler_step(s, k, step=step)
    if ctrl.project_mass:
        s_next = project_mass(s_next, ref.i1)
    if ctrl.project_momentum:
        s_next = project_momentum(s_next, ref.i3, ctrl.momentum_guard)
    return s_next


def constraint_ratios(s: SemiclassicalState, ref: Invariants) -> ConstraintRatios:
    j1 = mass(s) / ref.i1 if ref.i1 != 0.0 else float("nan")
    j2 = energy(s) / ref.i2 if ref.i2 != 0.0 else float("nan")
    i3 = momentum(s)
    j3 = tuple(
        i3[j] / ref.i3[j] if ref.i3[j] != 0.0 else float("nan") for j in range(2)
    )
    return ConstraintRatios(j1=j1, j2=j2, j3=j3)


@dataclass(frozen=True)
class StepRecord:
    """What observers see after each recorded step."""

    step: int
    k: float
    before: SemiclassicalState
    after: SemiclassicalState
    ratios: ConstraintRatios


Observer = Callable[[StepRecord], None]


def evolve(
    s0: SemiclassicalState,
    ctrl: StepControl,
    T: float,
    observers: Sequence[Observer] = (),
    stride: int = 1,
) -> SemiclassicalState:
    """Advance from s0 until t reaches exactly T.

    The final step is shortened to land on T.  Observers run every
    `stride` steps (and always on the final step).
    """
    if T < 0:
        raise ValueError(f"final time must be non-negative, got {T}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if T == 0.0 or s0.t >= T:
        return s0
    ref = invariants(s0)
    k0 = ctrl.time_step(s0.grid.h)
    s = s0
    # Fixed step count, final step shortened (or stretched by a rounding
    # unit) to land exactly on T.
    n_steps = max(1, int(np.ceil((T - s0.t) / k0 - 1e-9)))
    for step in range(1, n_steps + 1):
        k = k0 if step < n_steps else T - s.t
        try:
            before = s
            s = advance(s, ctrl, ref=ref, k=k, step=step)
        except BlowUpError as exc:
            raise BlowUpError(
                f"blow-up at t={before.t!r} (step {step}, eps={s0.eps})",
                step=step,
                t=before.t,
            ) from exc
        if observers and (step % stride == 0 or step == n_steps):
            record = StepRecord(
                step=step,
                k=k,
                before=before,
                after=s,
                ratios=constraint_ratios(s, ref),
            )
            for obs in observers:
                obs(record)
    return s
