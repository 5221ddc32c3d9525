"""Exception hierarchy shared by all wildlimits modules."""


class WildlimitsError(Exception):
    """Base class for all errors raised by this package."""


class MixedContext(WildlimitsError):
    """Operands live in different rings (variables or scalar backend differ)."""


class ZeroDenominator(WildlimitsError):
    """Attempt to build a rational function with denominator zero."""


class ZeroPolynomial(WildlimitsError):
    """Operation undefined on the zero polynomial (e.g. leading form)."""


class PoleAtZero(WildlimitsError):
    """A coefficient cannot be specialized because its denominator vanishes there."""


class NotInvertibleLinearPart(WildlimitsError):
    """Linear part of a polynomial map is singular, so no formal inverse exists."""


class CapExceeded(WildlimitsError):
    """Jet iteration reached the degree cap without finding an exact inverse."""


class NotNilpotentWithinCap(WildlimitsError):
    """Derivation powers did not vanish within the iteration cap."""


class NotPolynomialInT(WildlimitsError):
    """A coefficient of the composed family has a nontrivial denominator in t."""


class ResidualTowerGenerators(WildlimitsError):
    """A coefficient expected in the base field still involves tower generators."""


class ShapeViolation(WildlimitsError):
    """Correction map is not of the required (d*x + P(y,z), y, z) form."""


class NotPlaneAutomorphism(WildlimitsError):
    """The plane reduction procedure certifies the input is not an automorphism."""


class NotIntegralInput(WildlimitsError):
    """Plane map components are not polynomials over the coefficient ring."""


class InvalidStarReducedData(WildlimitsError):
    """Degree bookkeeping of a *-reduced pair is inconsistent (e.g. N < 2)."""


class IllegalDivisor(WildlimitsError):
    """Division by a map variable (or a non-invertible constant) in an expression."""


class MapSyntaxError(WildlimitsError):
    """Map expression failed to parse; position is the 0-based source offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position
