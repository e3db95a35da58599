"""Exception hierarchy.

Three families map onto CLI exit codes: bad input, precision exhaustion and
failed verification.
"""


class LiftError(Exception):
    """Base class for all package errors."""


class InputError(LiftError, ValueError):
    pass


class PrecisionExhausted(LiftError, ArithmeticError):
    """A result is indistinguishable from zero (or another value) at the working precision."""


class VerificationFailure(LiftError):
    pass


# local_field
class DivisionByZero(InputError, ZeroDivisionError):
    pass


class ZeroInput(InputError):
    pass


class NotASquare(InputError):
    pass


class OrderMismatch(VerificationFailure):
    pass


class UnsupportedExtension(InputError):
    pass


# sl2
class DeterminantDrift(PrecisionExhausted):
    pass


class CentralElement(InputError):
    pass


# bt_tree
class CapExceeded(InputError):
    pass


class NotElliptic(InputError):
    pass


class NotFiniteOrder(InputError):
    pass


class DepthInsufficient(InputError):
    pass


# lifting
class EvenOrder(InputError):
    pass


class Unbounded(InputError):
    """No finite order was found within the search bound."""


class HasTwoTorsion(InputError):
    pass


class ClosureFailure(VerificationFailure):
    pass


class TwoTorsionInVertexGroup(InputError):
    pass


class EdgeCompatibilityFailure(VerificationFailure):
    def __init__(self, edge, generator, msg=None):
        self.edge = edge
        self.generator = generator
        super().__init__(msg or f"edge {edge!r}: compatibility fails on generator {generator}")


class RelatorFailure(VerificationFailure):
    def __init__(self, word, msg=None):
        self.word = word
        super().__init__(msg or f"relator {word!r} does not map to I")


class RelationNotCentral(VerificationFailure):
    pass


# gallery
class ConditionViolated(InputError):
    def __init__(self, condition, msg=None):
        self.condition = condition
        super().__init__(msg or f"condition violated: {condition}")


class ExclusionHit(InputError):
    pass


class NotASquareForLambda(InputError):
    pass


class UnsupportedFamily(InputError):
    pass
