"""Exception taxonomy shared across the toolkit."""


class EsakiaKitError(Exception):
    """Base class for all toolkit errors."""


class CycleDetected(EsakiaKitError):
    """The input cover relation contains a directed cycle."""


class InvalidId(EsakiaKitError):
    """An element id is out of range or malformed."""


class TooLarge(EsakiaKitError):
    """Input exceeds the documented size bound for this operation."""


class UnboundVariable(EsakiaKitError):
    """A term variable has no value in the assignment."""


class TooManyAssignments(EsakiaKitError):
    """Exhaustive equation checking would exceed the assignment cap."""


class NotEPartition(EsakiaKitError):
    """The blocks do not satisfy the back-and-forth condition."""


class NotMergeable(EsakiaKitError):
    """The requested pair is not alpha- or beta-mergeable."""


class NotPMorphism(EsakiaKitError):
    """The map is not order-preserving or fails the back condition."""


class NotSurjective(EsakiaKitError):
    """The map does not cover its stated codomain."""


class NotWeakColoring(EsakiaKitError):
    """The color assignment is not order-preserving."""


class NotColoring(EsakiaKitError):
    """The coloring is weak but not strict."""


class NotUpset(EsakiaKitError):
    """The element set is not upward closed."""


class BudgetExceeded(EsakiaKitError):
    """A search ran out of its node or sample budget before deciding."""


class OutOfRange(EsakiaKitError):
    """A level, index, or depth parameter is outside the generated space."""


class EmbeddingMismatch(EsakiaKitError):
    """The claimed order embedding disagrees with the target poset."""


class QuotientNotColorable(EsakiaKitError):
    """A quotient that must admit a coloring does not."""


class Overflow(EsakiaKitError):
    """A closed-form bound does not fit the documented integer range."""


class PropertyFalsified(EsakiaKitError):
    """A structural claim the library is built around failed on real data.

    This is deliberately loud: it is never caught internally.
    """
