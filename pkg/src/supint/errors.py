"""Exception types shared across the package."""


class SupintError(Exception):
    """Base class for all package errors."""


class ChartMismatchError(SupintError):
    """A phase-space state was supplied in an unsupported chart."""


class SingularChartError(SupintError):
    """A coordinate transformation was requested at a chart singularity."""


class SingularityError(SupintError):
    """A potential was evaluated on (or too close to) one of its singular walls.

    Carries the name and value of the denominator that vanished so callers
    can tell which wall was hit.
    """

    def __init__(self, denominator: str, value: float):
        self.denominator = denominator
        self.value = value
        super().__init__(f"singular configuration: {denominator} = {value:.3e}")


class ParameterError(SupintError):
    """Invalid or missing potential/group parameter."""


class ClosureError(SupintError):
    """Group closure did not terminate at the expected order."""


class ConvergenceError(SupintError):
    """An iterative solver (fixed point, secant) failed to converge."""


class ConventionMismatchError(SupintError):
    """A phase/scale fit between two forms of the same potential failed."""


class StepRejectedError(SupintError):
    """An integration step crossed a singular wall and must be retried smaller."""


class JetPoleError(SupintError):
    """A jet expansion was requested at a pole of the function."""
