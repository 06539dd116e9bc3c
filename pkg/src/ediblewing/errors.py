"""Exception types shared across the package."""


class DesignError(ValueError):
    """Base class for invalid inputs and failed design computations."""


class MaterialDBError(DesignError):
    """A material or adhesive database file could not be parsed."""


class InfeasiblePlanformError(DesignError):
    """The planform constraint has no root in the allowed aspect-ratio range."""

    def __init__(self, message: str, residual_low: float, residual_high: float):
        super().__init__(message)
        self.residual_low = residual_low
        self.residual_high = residual_high


class PipelineStageError(DesignError):
    """A pipeline stage failed; carries the stage name for diagnostics."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause
