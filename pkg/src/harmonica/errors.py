"""Exception hierarchy.

The CLI maps these onto its exit-code contract: validation errors exit 2,
singular/degenerate inputs exit 3, numerical failures exit 4, and the
enumeration resource guard exits 5.
"""


class HarmonicaError(Exception):
    """Base class for all library errors."""


class InvalidInput(HarmonicaError, ValueError):
    """Malformed or inconsistent input data."""


class CrossingHalf(InvalidInput):
    """A half of a bimatching is not noncrossing."""


class ExcessCrossings(InvalidInput):
    """Some pair crosses more than one pair of the opposite parity."""


class NotNoncrossing(InvalidInput):
    """A partition or matching required to be noncrossing is not."""


class BadBlockResidues(InvalidInput):
    """A gap between consecutive block elements has cardinality not divisible by 4."""


class MissingOuterPair(InvalidInput):
    """Matching lacks the outer pair {0, 2n+1} required for un-hatting."""


class BadTransition(InvalidInput):
    """Consecutive necklace matchings are not related by a single swap."""


class WrongLength(InvalidInput):
    """A necklace tuple has the wrong number of matchings."""


class SingularTheta(HarmonicaError):
    """The requested angle is too close to a singular angle of the polynomial."""


class DegeneratePolynomial(HarmonicaError):
    """The polynomial has a repeated root; every level curve is singular."""


class NecklaceDegenerate(HarmonicaError):
    """Singular angles collide or the polynomial is degenerate; no necklace."""


class NumericalError(HarmonicaError):
    """Base class for numerical failures of the analysis pipeline."""


class NoConvergence(NumericalError):
    """Root finder failed to converge within the restart budget."""


class RadiusSearchFailed(NumericalError):
    """No certified trace radius found within the doubling budget."""


class BracketLost(NumericalError):
    """Boundary intersections could not be certified at the given radius."""


class NearSingular(NumericalError):
    """|f'| fell below the safety floor along a traced path."""


class StepLimit(NumericalError):
    """Curve tracing exceeded the step budget or underflowed its step size."""


class ExitMismatch(NumericalError):
    """A traced path exited the disk away from every labeled boundary point."""


class NotABasketball(NumericalError):
    """Numerically extracted bimatching failed basketball validation."""


class InsertionFailed(NumericalError):
    """No insertion radius reproduced the hat-extended matchings."""


class VerificationFailed(NumericalError):
    """Forward analysis of a constructed polynomial disagrees with the target."""


class ResourceLimit(HarmonicaError):
    """Enumeration order exceeds the configured guard; pass force to override."""
