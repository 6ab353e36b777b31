"""Exception hierarchy shared by all modules."""


class RackBialgError(Exception):
    pass


class IndexOutOfRange(RackBialgError, IndexError):
    pass


class IdentityViolation(RackBialgError, ValueError):
    """Raised when a bracket table fails an identity; ``triples`` lists the failures.

    Each entry is ``(i, j, k, lhs, rhs)`` with 1-based indices and coordinate
    tuples for both sides.
    """

    def __init__(self, message, triples):
        super().__init__(message)
        self.triples = triples


class NotAnIdeal(RackBialgError, ValueError):
    pass


class IdealOutOfRange(RackBialgError, ValueError):
    pass


class UnknownName(RackBialgError, KeyError):
    pass


class DimensionMismatch(RackBialgError, ValueError):
    pass


class AlgebraMismatch(RackBialgError, ValueError):
    pass


class NonTerminating(RackBialgError, ValueError):
    pass


class MalformedCoalgebra(RackBialgError, ValueError):
    pass


class NotCoalgebraMorphism(RackBialgError, ValueError):
    pass


class NotEquivariant(RackBialgError, ValueError):
    pass


class InvalidRack(RackBialgError, ValueError):
    pass


class NotEquivariantAugmentation(RackBialgError, ValueError):
    pass


class NotCocommutative(RackBialgError, ValueError):
    pass


class TooLarge(RackBialgError, ValueError):
    pass


class NotCocycle(RackBialgError, ValueError):
    pass


class CapExceeded(RackBialgError, ValueError):
    pass


class NotAugmentationIdeal(RackBialgError, ValueError):
    pass


class ParseError(RackBialgError, ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


class CheckFailed(RackBialgError):
    pass
