"""Exception hierarchy shared by the engine, the parser and the CLI."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class DivByZero(EngineError, ZeroDivisionError):
    pass


class DimMismatch(EngineError, ValueError):
    pass


class SecondDerivative(EngineError, ValueError):
    """Raised when a derivative symbol would itself be differentiated."""


class NotSplitting(EngineError, ValueError):
    def __init__(self, q: int):
        super().__init__(f"d p{q} is not zero, so direction {q} cannot belong to the base")
        self.q = q


class HypothesisViolated(EngineError, ValueError):
    def __init__(self, which: str):
        super().__init__(f"hypothesis violated: {which}")
        self.which = which


class InternalInconsistency(EngineError, AssertionError):
    """An identity that must hold by construction failed; always a bug."""


class UnknownEntry(EngineError, KeyError):
    def __str__(self) -> str:
        return f"unknown catalog entry: {self.args[0]!r}"


class DslError(EngineError, ValueError):
    """Located parse error for structure-equation documents."""

    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(text)
