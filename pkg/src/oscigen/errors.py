"""Exception types shared across the package."""


class WindowMismatchError(ValueError):
    """Binary series operation on operands with different truncation windows
    or coefficient domains."""


class SingularSeriesError(ArithmeticError):
    """Series inversion requested for a series whose constant term is not
    invertible in its coefficient domain."""


class SingularEvaluationError(ArithmeticError):
    """Closed-form evaluation hit a pole or a branch-cut ambiguity."""


class OracleFailureError(RuntimeError):
    """Contour (DFT) coefficient extraction did not converge: the imaginary
    residue of a real coefficient exceeded tolerance."""


class PrecisionError(RuntimeError):
    """A requested tolerance could not be certified.  ``achieved`` carries the
    best bound that was reached."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved {achieved:.3e})")
        self.achieved = achieved


class IntegrationError(RuntimeError):
    """Adaptive ODE integration failed (step-size underflow or a profile that
    never settles to its asymptotic value)."""
