"""Exception hierarchy and warning types.

Input problems (bad parameters) derive from :class:`ParameterError`;
failures of the numerical machinery derive from :class:`NumericalError`.
The CLI maps the former to exit code 2 and the latter to exit code 3.
"""


class QcorrError(Exception):
    """Base class for all package errors."""


class ParameterError(QcorrError):
    """Invalid physical parameters."""


class ResonantParams(ParameterError):
    """Degenerate oscillator frequencies: the stationary state is not unique."""


class NonPositiveFrequency(ParameterError):
    """A frequency that must be strictly positive is not."""


class NegativeRate(ParameterError):
    """A non-negative rate/coupling/temperature is negative."""


class NumericalError(QcorrError):
    """Failure of a numerical routine."""


class KernelPole(NumericalError):
    """Dissipative kernel evaluated at (or too close to) its pole."""


class SingularAtFrequency(NumericalError):
    """Susceptibility matrix is singular at the requested frequency."""


class RootFindingFailure(NumericalError):
    """Polynomial root polishing did not reach the residual tolerance."""


class NearRealAxisRoot(NumericalError):
    """A characteristic root sits (numerically) on the real axis: undamped
    mode, no unique stationary state."""


class DigammaPole(NumericalError):
    """Digamma evaluated at a non-positive integer."""


class CothPole(NumericalError):
    """coth evaluated at (or too close to) a pole i*pi*n."""


class DegeneratePoles(NumericalError):
    """Two poles of the rational kernel are too close for a stable
    partial-fraction decomposition."""


class QuadratureNonConvergence(NumericalError):
    """Adaptive quadrature missed its error target.

    Attributes
    ----------
    achieved : float
        Error estimate actually reached.
    """

    def __init__(self, msg, achieved=float("nan")):
        super().__init__(msg)
        self.achieved = achieved


class UnphysicalState(NumericalError):
    """Covariance matrix violates the Heisenberg (symplectic) bound."""


class UnstablePotential(NumericalError):
    """Potential matrix of the closed effective model is not positive
    definite."""


class DomainWarning(UserWarning):
    """Approximation evaluated outside its nominal validity region."""
