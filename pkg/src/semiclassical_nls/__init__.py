"""Asymptotic-preserving solver for the semiclassical cubic NLS equation.

The unknown is a complex amplitude / velocity pair on a periodic 2D grid;
the discretization (mesh and time step) is independent of the semiclassical
parameter eps, and per-step rescaling projections keep mass and momentum at
their initial values.
"""

from .errors import (
    BlowUpError,
    ComparisonError,
    ConfigurationError,
    DegenerateProjectionError,
    FieldDomainError,
    ReconstructionError,
    SolverError,
)
from .grid import (
    ComplexField,
    Grid,
    ScalarField,
    VectorField,
    divergence,
    gradient,
    integrate,
    laplacian_c,
    make_grid,
)
from .state import (
    ConstraintRatios,
    Invariants,
    SemiclassicalState,
    current_density,
    energy,
    invariants,
    mass,
    momentum,
    position_density,
)
from .dynamics import (
    StepControl,
    StepRecord,
    Tendency,
    advance,
    constraint_ratios,
    euler_step,
    evolve,
    project_mass,
    project_momentum,
    rhs,
)
from .phase import PhaseAccumulator, phase_accumulate, phase_init, wave_function
from .experiments import (
    CASE_IDS,
    ExperimentCase,
    SeriesSample,
    SweepResult,
    constraint_series,
    epsilon_sweep,
    experiment_case,
    indicator_l1,
    indicator_l2,
    initial_condition,
)

__version__ = "0.1.0"
