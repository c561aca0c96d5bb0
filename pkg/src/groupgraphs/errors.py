"""Exception types shared across the package."""


class GroupGraphsError(Exception):
    """Base class for every error raised by this package."""


class NotAGroupError(GroupGraphsError):
    """A Cayley table fails one of the group axioms; the message names the check."""


class SizeLimitError(GroupGraphsError):
    """A construction or enumeration would exceed the configured order cap."""


class NotAnActionError(GroupGraphsError):
    """A claimed action is not a homomorphism into the automorphism group."""


class NotNormalError(GroupGraphsError):
    """Quotient requested by a subgroup that is not normal."""


class NotADivisorError(GroupGraphsError):
    """A prime was supplied that does not divide the group order."""


class AbelianGroupError(GroupGraphsError):
    """The non-commuting graph of an abelian group has an empty vertex set."""


class NotTwoGeneratedError(GroupGraphsError):
    """Generating-graph machinery applied to a group no pair generates."""


class NotNilpotentError(GroupGraphsError):
    """A nilpotent-only formula was applied to a non-nilpotent group."""


class CyclicGroupError(GroupGraphsError):
    """A non-cyclic-only formula was applied to a cyclic group."""


class UnrecoverableRatioError(GroupGraphsError):
    """No prime multiset within the search bound realises the given ratio."""


class DecompositionNotFoundError(GroupGraphsError):
    """No module/complement decomposition of the required shape exists."""


class CayleyParseError(GroupGraphsError):
    """Malformed Cayley-table file."""


class Graph6ParseError(GroupGraphsError):
    """Malformed graph6 string."""
