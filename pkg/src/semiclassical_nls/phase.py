"""
Phase reconstruction by time quadrature, and assembly of the wave function
from amplitude and phase.

The phase solves d/dt phi = -( |v|^2 / 2 + |a|^2 ), integrated with the
left-endpoint rule so the quadrature order matches the first-order time
stepper.  Accumulation is online: attach `PhaseAccumulator.observer()` to
`evolve` with stride 1, so memory scales with the grid, not the step count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import StepRecord
from .errors import ReconstructionError
from .grid import ComplexField, ScalarField
from .state import SemiclassicalState

__all__ = ["PhaseAccumulator", "phase_init", "phase_accumulate", "wave_function"]


@dataclass
class PhaseAccumulator:
    """Running phase field; single-owner, advanced in step with the solver."""

    phi: ScalarField
    t: float = 0.0

    def observer(self):
        """Adapter for the evolve observer protocol (requires stride=1)."""

        def _on_step(record: StepRecord) -> None:
            updated = phase_accumulate(self, record.before, record.k)
            self.phi = updated.phi
            self.t = updated.t

        return _on_step


def phase_init(phi0: ScalarField) -> PhaseAccumulator:
    return PhaseAccumulator(phi=phi0, t=0.0)


def phase_accumulate(
    acc: PhaseAccumulator, s: SemiclassicalState, k: float
) -> PhaseAccumulator:
    """Advance the phase by one step using the state at the left endpoint."""
    speed2 = s.v.comp_x ** 2 + s.v.comp_y ** 2
    rho = s.a.re ** 2 + s.a.im ** 2
    phi_new = acc.phi.values - k * (0.5 * speed2 + rho)
    return PhaseAccumulator(phi=ScalarField(acc.phi.grid, phi_new), t=acc.t + k)


def wave_function(a: ComplexField, phi: ScalarField, eps: float) -> ComplexField:
    """a * exp(i phi / eps); undefined in the fluid limit eps = 0."""
    if eps <= 0:
        raise ReconstructionError(
            "wave-function reconstruction requires eps > 0; the limit wave "
            "function is not defined by the phase/amplitude formula"
        )
    return ComplexField(a.grid, a.values * np.exp(1j * phi.values / eps))
