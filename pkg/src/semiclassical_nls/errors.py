"""Exception hierarchy shared across the solver."""


class SolverError(Exception):
    """Base class for all solver-specific failures."""


class ConfigurationError(SolverError):
    """Invalid grid, case, or run configuration."""


class FieldDomainError(SolverError):
    """A field contains non-finite samples or has the wrong shape."""


class BlowUpError(SolverError):
    """The explicit time integration produced non-finite values."""

    def __init__(self, message: str, step: int, t: float):
        super().__init__(message)
        self.step = step
        self.t = t


class DegenerateProjectionError(SolverError):
    """Mass projection requested on a state with zero mass."""


class ReconstructionError(SolverError):
    """Wave-function reconstruction requested where it is undefined."""


class ComparisonError(SolverError):
    """Indicator evaluation on incompatible states (grid or time mismatch)."""
