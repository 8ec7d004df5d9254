"""Exception types shared across the toolkit."""

from __future__ import annotations


class FanoCertError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FanoCertError, ValueError):
    """A parameter value hits a pole or lies outside the declared domain."""


class SystemSyntaxError(FanoCertError, SyntaxError):
    """Malformed system source. Carries 1-based line and column."""

    def __init__(self, msg: str, line: int, column: int, text: str | None = None):
        super().__init__(msg, ("<system>", line, column, text))
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.msg} (line {self.line}, column {self.column})"


class UndeclaredVariable(FanoCertError, KeyError):
    def __init__(self, name: str, line: int | None = None):
        super().__init__(name)
        self.name = name
        self.line = line

    def __str__(self) -> str:
        where = f" on line {self.line}" if self.line is not None else ""
        return f"undeclared variable {self.name!r}{where}"


class ZeroRowConstraint(FanoCertError, ValueError):
    """A constraint whose left side has no nonzero coefficient."""


class UnknownConstraintId(FanoCertError, KeyError):
    pass


class ScalarFieldError(FanoCertError, TypeError):
    pass


class UnknownPipeline(FanoCertError, KeyError):
    pass


class UnknownChain(FanoCertError, KeyError):
    pass


class UnknownSystem(FanoCertError, KeyError):
    pass


class EmptyRange(FanoCertError, ValueError):
    pass


class NotTelescoping(FanoCertError, ValueError):
    pass


class EmptyRegion(FanoCertError, ValueError):
    pass


class UnboundedBelow(FanoCertError, ValueError):
    pass


class DegenerateWeights(FanoCertError, ValueError):
    pass


class LengthMismatch(FanoCertError, ValueError):
    pass
