"""Exception types raised across the package."""

from __future__ import annotations


class HahnPSTError(Exception):
    """Base class for all package errors."""


class DomainError(HahnPSTError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterDomainError(DomainError):
    """Chain parameters violate the positivity conditions."""


class DegenerateSpectrumError(HahnPSTError, ValueError):
    """Two spectral points coincide."""


class NonPositiveCouplingError(HahnPSTError, ValueError):
    """A recurrence coefficient u_n (n = 1..N) is not strictly positive."""


class UnsupportedRemovalError(HahnPSTError, ValueError):
    """Christoffel removal of an interior eigenvalue was requested."""


class SingularTransformError(HahnPSTError, ArithmeticError):
    """P_n vanishes at the removed level, so K_n is undefined."""


class IllConditionedMeasureError(HahnPSTError, ArithmeticError):
    """The Stieltjes procedure lost positivity of a squared norm."""


class ConvergenceError(HahnPSTError, ArithmeticError):
    """The eigensolver exceeded its iteration budget."""


class InvalidDesignError(HahnPSTError, ValueError):
    """A design request violates the parity restrictions on (M1, M2)."""


class SpacingViolationError(HahnPSTError, ValueError):
    """A spacing ratio has an even numerator or denominator.

    ``index`` is the spacing whose ratio to the first spacing is offending.
    """

    def __init__(self, index: int, ratio):
        self.index = index
        self.ratio = ratio
        super().__init__(f"spacing {index} has ratio {ratio} to the first spacing; "
                         "numerator and denominator must both be odd")
