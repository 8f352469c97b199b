"""Exception hierarchy for input validation and numeric failure modes."""


class NegTypeError(ValueError):
    """Base class for all errors raised by this package."""


class AsymmetricMatrix(NegTypeError):
    """Distance matrix is not square or not symmetric."""


class NonzeroDiagonal(NegTypeError):
    """Distance matrix has a nonzero diagonal entry."""


class NonpositiveOffDiagonal(NegTypeError):
    """An off-diagonal distance is zero, negative, or not a number."""


class TooSmall(NegTypeError):
    """Fewer points than the operation supports."""


class TooFewPoints(NegTypeError):
    """Operation needs a larger point count (bound formulas need n >= 3)."""


class TooManyPoints(NegTypeError):
    """Exhaustive bipartition search refused; use the sampling oracle instead."""


class NegativeExponent(NegTypeError):
    """Distance exponents must be >= 0."""


class NonpositiveScale(NegTypeError):
    """Rescaling factor must be > 0."""


class NonpositiveWeight(NegTypeError):
    """Edge weights must be > 0."""


class NotATree(NegTypeError):
    """Edge list has a cycle, is disconnected, or is otherwise not a tree."""


class NotUnitWeights(NegTypeError):
    """Operation is defined for unit edge weights only."""


class BlockSizeTooSmall(NegTypeError):
    """Block size fails the metric admissibility gate of the block family."""


class ExponentsNotDecreasing(NegTypeError):
    """Block exponents must strictly decrease and stay above the target."""


class DuplicateAngle(NegTypeError):
    """Circle points must have pairwise distinct angles."""


class BadRange(NegTypeError):
    """Random distance range must satisfy 0 < min <= max."""


class InvalidSimplex(NegTypeError):
    """Loaded simplex violates disjointness, positivity, or normalization."""


class BadNormalization(NegTypeError):
    """Signed weight vector does not have unit positive and negative mass."""


class NegativeGap(NegTypeError):
    """Gap argument must be >= 0."""


class EigensolverFailure(NegTypeError):
    """Eigensolver did not converge within its sweep cap."""


class IntervalAnomaly(NegTypeError):
    """Scan statuses violate the strict/boundary/fail interval pattern.

    Signals a numerical-tolerance problem; never swallowed.
    """

    def __init__(self, message, offending_pair=None):
        super().__init__(message)
        self.offending_pair = offending_pair


class NoBoundaryWitness(NegTypeError):
    """No boundary witness exists (supremal exponent is infinite/degenerate)."""


class NotConverged(NegTypeError):
    """QP iteration cap reached before the stationarity target."""
