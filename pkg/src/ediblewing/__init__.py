"""Design automation for fixed-wing drones with nutrition-carrying edible wings.

The package turns a calorie target and payload requirement into a verified
design: mass budget, wing planform at the target Reynolds number, aerodynamic
operating point, thrust and tail sizing, a spanwise strength check, and a
hexagonal cut layout with calorie accounting.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    DesignError,
    InfeasiblePlanformError,
    MaterialDBError,
    PipelineStageError,
)
from .pipeline import DesignConfig, DesignReport, run_design_pipeline  # noqa: F401
