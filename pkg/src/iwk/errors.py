"""Exception hierarchy shared by every module.

Each error carries its class name so the CLI can report it verbatim.
"""


class IwkError(Exception):
    """Base class for mathematical failures (CLI exit status 1)."""

    @property
    def name(self):
        return type(self).__name__


class ContextMismatch(IwkError):
    pass


class DivisionByZeroAtPrecision(IwkError):
    pass


class ZeroResidue(IwkError):
    pass


class AllCoefficientsNonUnit(IwkError):
    pass


class TruncationTooSmall(IwkError):
    pass


class UnknownVariable(IwkError):
    pass


class NotTorsion(IwkError):
    pass


class NotReduced(IwkError):
    pass


class NoSectionComponent(IwkError):
    pass


class NotGorenstein(IwkError):
    pass


class IndexOutOfRange(IwkError):
    pass


class RangeParityError(IwkError):
    pass


class SingularInput(IwkError):
    pass


class DimensionMismatch(IwkError):
    pass


class DegenerateDirection(IwkError):
    pass


class NotMonic(IwkError):
    pass


class ZeroEigenvalue(IwkError):
    pass


class PrecisionLoss(IwkError):
    """A result would depend on digits beyond the working precision."""
