"""Exception types shared across the package.

The CLI maps these onto process exit codes (validation failure -> 1,
internal consistency failure -> 2, size guard -> 3).
"""


class ChainValidationError(ValueError):
    """Model parameters violate a positivity or range constraint."""


class SizeLimitError(ValueError):
    """Requested computation exceeds a hard size guard."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class AnalyticPathError(RuntimeError):
    """The closed-form/secular route does not apply to these parameters."""


class RootCountError(RuntimeError):
    """Secular root search found the wrong number of roots.

    Carries the roots found so far and the grid resolution, so callers can
    fall back to the dense block-matrix route and report what happened.
    """

    def __init__(self, message, roots_found, grid_points):
        super().__init__(message)
        self.roots_found = roots_found
        self.grid_points = grid_points


class DegenerateModeError(RuntimeError):
    """An eigenvector ansatz degenerates (collinear branches, zero energy)."""
