"""Exception types raised across the package."""


class SemigroupError(Exception):
    pass


class CapExceeded(SemigroupError):
    """A construction would exceed the configured element or length cap."""


class BudgetExceeded(SemigroupError):
    """A search ran out of budget before reaching a definite answer."""


class NotAssociative(SemigroupError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"table is not associative at {triple}")


class NotAnIdeal(SemigroupError):
    pass


class NotASubsemigroup(SemigroupError):
    pass


class NotACongruence(SemigroupError):
    def __init__(self, triple, side):
        # (x, y, s): x ~ y but x*s !~ y*s (side="right") or s*x !~ s*y (side="left")
        self.triple = triple
        self.side = side
        super().__init__(f"partition is not a {side} congruence: witness {triple}")


class NotCompletelyRegular(SemigroupError):
    pass


class DNotCongruence(SemigroupError):
    pass


class UnknownName(SemigroupError):
    pass


class NotNested(SemigroupError):
    pass


class NotNormal(SemigroupError):
    pass


class UnboundVariable(SemigroupError):
    pass


class BadExponent(SemigroupError):
    pass


class BadIndex(SemigroupError):
    pass


class NotAFactor(SemigroupError):
    pass


class ParseError(SemigroupError):
    pass


class BadFile(SemigroupError):
    pass


class UnknownLemma(SemigroupError):
    pass
