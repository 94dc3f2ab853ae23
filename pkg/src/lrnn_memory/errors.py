"""Exception and warning types shared across the package."""


class ShapeError(ValueError):
    """Operands have non-conforming shapes; the message names both."""


class DomainError(ValueError):
    """Input is outside the mathematical domain of the operation."""


class NumericalError(RuntimeError):
    """An iterative routine failed to converge.

    ``residual`` carries the convergence measure at the point of failure.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class FormatError(ValueError):
    """A binary file does not match its declared format.

    ``offset`` is the byte position at which parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


class TrajectoryRejected(RuntimeError):
    """ODE state magnitude exceeded the blow-up bound during integration.

    ``step`` is the 1-based integration step at which the bound was crossed.
    """

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class IllConditionedWarning(UserWarning):
    """Reconstruction attempted through a badly conditioned map.

    ``cond`` carries the offending condition number.
    """

    def __init__(self, message: str, cond: float):
        super().__init__(message)
        self.cond = cond


class RankDeficiencyWarning(UserWarning):
    """A compressed reconstruction system lost column rank.

    ``sigma_min`` carries the smallest singular value observed.
    """

    def __init__(self, message: str, sigma_min: float):
        super().__init__(message)
        self.sigma_min = sigma_min


class UsageError(ValueError):
    """Bad CLI configuration; mapped to exit code 2."""
