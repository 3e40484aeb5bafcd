"""Exception types raised across the package."""


class AndreadakisError(Exception):
    """Base class for errors raised by this package."""


class RankMismatchError(AndreadakisError, ValueError):
    pass


class IndexOutOfRangeError(AndreadakisError, ValueError):
    pass


class NotInCommutatorSubgroupError(AndreadakisError, ValueError):
    """The word has nonzero exponent sum in some generator."""


class TruncationError(AndreadakisError):
    """A degree that is needed exactly lies beyond the truncation."""


class NotIAError(AndreadakisError, ValueError):
    """The endomorphism acts nontrivially on the abelianization."""


class NotTriangularError(AndreadakisError, ValueError):
    pass


class NotConjugationFormError(AndreadakisError, ValueError):
    """A braid image is not a conjugate of the corresponding generator."""


class NonLieElementError(AndreadakisError):
    """A polynomial expected to be a Lie element is not one.

    This is an internal consistency failure, never a valid state.
    """


class BudgetExceededError(AndreadakisError):
    """A rewriting procedure exceeded its configured length budget."""


class ParseError(AndreadakisError, ValueError):
    pass
