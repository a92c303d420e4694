class SymexprError(Exception):
    """Base class for kernel errors."""


class DivisionByZero(SymexprError, ZeroDivisionError):
    pass


class DenominatorVanishes(DivisionByZero):
    """A substitution turned a denominator into the zero polynomial."""


class UnboundVariable(SymexprError, LookupError):
    pass


class ExprSyntaxError(SymexprError, ValueError):
    """Malformed expression text; ``offset`` is a 0-based byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    pass


class NegativeExponent(ExprSyntaxError):
    pass
