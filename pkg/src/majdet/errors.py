"""Exception types shared across the package."""


class MajdetError(Exception):
    """Base class for all majdet errors."""


class NotSymmetric(MajdetError):
    """Matrix fails the symmetry tolerance."""


class NotPositiveDefinite(MajdetError):
    """Cholesky factorization hit a non-positive (or near-zero) pivot."""


class NoConvergence(MajdetError):
    """Eigensolver failed to reduce the off-diagonal norm within budget."""


class DimensionMismatch(MajdetError):
    """Operands have incompatible dimensions."""


class SingularMatrix(MajdetError):
    """Exact elimination found the matrix singular where invertibility is required."""


class EmptyVector(MajdetError):
    """Vector operation received an empty input."""


class LengthMismatch(MajdetError):
    """Vector operands have different lengths."""


class NonPositiveEntry(MajdetError):
    """Positive entries required (log-domain or power-mean arithmetic)."""


class ZeroOrder(MajdetError):
    """Power mean of order zero; use the geometric mean instead."""


class BadPartition(MajdetError):
    """Block sizes are not positive or do not sum to the ambient dimension."""


class BadConfig(MajdetError):
    """Generator configuration outside its documented bounds."""


class IndexOutOfRange(MajdetError):
    """Principal-submatrix index set is invalid."""


class NegativePower(MajdetError):
    """Exponent must be nonnegative for this check."""


class BadExponent(MajdetError):
    """Exponent outside the range this check is stated for."""


class UnknownInequality(MajdetError):
    """Inequality id not in the catalog."""


class ResampleExhausted(MajdetError):
    """Random generator failed to meet the conditioning cap within the retry budget."""


class BadMatrixFile(MajdetError):
    """Matrix file does not conform to the JSON schema."""
