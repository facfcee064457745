"""Exception hierarchy shared by every module."""


class RealexError(Exception):
    pass


class GuardViolation(RealexError):
    """An approximation certified that a guarded argument left its bound."""


class DomainError(RealexError):
    pass


class SignPrecondition(RealexError):
    """Endpoint signs of an IVT instance could not be certified."""


class FuelExhausted(RealexError):
    """A bounded search ran past its fuel without an answer."""


class DepthTooSmall(RealexError):
    pass


class IncompatibleDomains(RealexError):
    pass


class ParseError(RealexError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class ModulusError(RealexError):
    """A DSL term has no derivable Lipschitz bound (missing guard, unbounded)."""
