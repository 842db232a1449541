"""Exception taxonomy for the package.

Every error raised on a violated precondition or a failed search derives from
DlsplitError so callers can catch one base class. Names state the violated
condition, not the call site.
"""


class DlsplitError(Exception):
    """Base class for all package errors."""


class BadParameters(DlsplitError):
    """Numeric or structural parameters outside their documented domain."""


class NotPrime(BadParameters):
    """A value required to be prime is composite (or < 2)."""


class NotIrreducible(BadParameters):
    """A defining polynomial is reducible over its coefficient field."""


class EllDoesNotDivide(BadParameters):
    """The subgroup order does not divide the relevant cyclotomic value."""


class GeneratorOrderTooSmall(BadParameters):
    """The supplied generator does not generate the required subgroup."""


class DivisionByZero(DlsplitError):
    """Inversion of zero in a field or ring."""


class FieldMismatch(DlsplitError):
    """Operands belong to different field contexts."""


class ZeroPolynomial(DlsplitError):
    """An operation is undefined for the zero polynomial."""


class TargetInSubfield(DlsplitError):
    """The element to be reduced already lies in the chosen subfield."""


class SubfieldTarget(TargetInSubfield):
    """Alias kept distinct: target rejected by a search front-end."""


class RankDeficient(DlsplitError):
    """A matrix expected to have full rank does not."""


class NoBasisFound(DlsplitError):
    """No independent subfield power basis exists for the requested divisor."""


class BudgetExhausted(DlsplitError):
    """A bounded search ran out of trials without success."""


class BudgetExceeded(DlsplitError):
    """An input exceeds a hard oracle budget (size, order, bit length)."""


class DimensionMismatch(DlsplitError):
    """Matrix or vector dimensions are inconsistent."""


class DegreeOutOfRange(DlsplitError):
    """A polynomial degree parameter is outside its allowed interval."""


class NotInSubgroup(DlsplitError):
    """An element fails the order-ell subgroup membership test."""


class NoSolution(DlsplitError):
    """An exact solve (root finding, compression) has no admissible solution."""


class DomainError(DlsplitError):
    """A real-valued formula was evaluated outside its domain."""


class OverflowNever(DlsplitError):
    """Raised only if integer arithmetic silently degraded; should not occur."""
