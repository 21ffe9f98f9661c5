"""Exception types shared across the package."""


class UsageError(ValueError):
    """Caller passed arguments outside an operation's contract."""


class GraphParseError(UsageError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class DomainError(ValueError):
    """Input is well-formed but outside the mathematical domain (e.g. negative multiplicity)."""


class PreconditionError(ValueError):
    """A hypothesis required by the operation does not hold."""


class UnsupportedModulusError(ValueError):
    """The modulus has three or more distinct prime factors."""


class ResourceError(RuntimeError):
    """A configured size or search budget would be exceeded."""
