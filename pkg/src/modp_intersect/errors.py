"""Exception taxonomy shared by every module in the package."""


class ModpError(Exception):
    """Base class for all library errors."""


class ZeroInverse(ModpError):
    """Multiplicative inverse of zero was requested."""


class NotASubspace(ModpError):
    """Quotient requested for a row space that is not contained in the other."""


class UnknownTag(ModpError):
    """Theorem tag outside the fixed enumeration."""


class PreconditionUnmet(ModpError):
    """An operation was called outside its documented parameter range."""


class DegreeTooLarge(ModpError):
    """Inclusion-system degree cap exceeds the index ground set."""


class InvalidFamily(ModpError):
    """A family failed the size / intersection conditions it was required to satisfy."""


class Inapplicable(ModpError):
    """The check cannot be evaluated for these parameters (reported, never guessed)."""


class MixedContext(ModpError):
    """Polynomials or matrices with different variable counts or moduli were combined."""


class BadIndexSet(ModpError):
    """Index set out of range for the polynomial family being built."""


class CaseMismatch(ModpError):
    """Certificate routine called for an instance classified under a different case."""


class HypothesisUnmet(ModpError):
    """No theorem hypothesis covers the instance."""


class RankDeficit(ModpError):
    """An expected-full-rank certificate matrix turned out rank deficient."""


class StepFailure(ModpError):
    """A recorded inequality step of a counting certificate failed."""


class TooLarge(ModpError):
    """Instance exceeds the supported desk-scale limits."""


class FormatError(ModpError):
    """A family or certificate document failed to parse or validate."""
