"""Exception hierarchy shared across the library."""

from __future__ import annotations


class RainbowDPError(Exception):
    """Base class for all library-specific errors."""


class SizeMismatchError(RainbowDPError):
    """Two sequences that must have equal length do not."""


class InvalidSimplexError(RainbowDPError, ValueError):
    """A raw vector is not a probability distribution."""


class NegativeEntryError(InvalidSimplexError):
    def __init__(self, index: int, value: float):
        super().__init__(f"entry {index} is negative beyond tolerance: {value!r}")
        self.index = index
        self.value = value


class SumNotOneError(InvalidSimplexError):
    def __init__(self, total: float):
        super().__init__(f"entries sum to {total!r}, expected 1 within tolerance")
        self.total = total


class DomainMismatchError(RainbowDPError):
    """A mechanism is not defined on exactly the vertices of the graph at hand."""


class EmptyBoundaryRegionError(RainbowDPError):
    """A region vertex cannot reach any boundary vertex inside its region."""


class NotAMorphismError(RainbowDPError):
    """A vertex map sends some adjacent pair to distinct non-adjacent images."""


class InfeasibleError(RainbowDPError):
    """No mechanism satisfies the privacy constraints with the given fixed values."""

    def __init__(self, message: str, violations: tuple = ()):
        super().__init__(message)
        self.violations = tuple(violations)


class InfeasibleBoundaryError(InfeasibleError):
    """The requested boundary distributions admit no private extension."""


class UnknownVertexError(RainbowDPError, KeyError):
    """A vertex id is not part of the mechanism or graph domain."""


class ParseError(RainbowDPError):
    """A text input file does not follow the documented grammar."""

    def __init__(self, message: str, path: str | None = None, lineno: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:{lineno}: " if lineno is not None else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.lineno = lineno
