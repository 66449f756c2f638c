"""Exception hierarchy shared by the services and the command line."""

from __future__ import annotations

from collections.abc import Iterable


class TempoArbError(Exception):
    """Base class for every error raised by tempo_arb."""


class FormatError(TempoArbError, ValueError):
    """A text record could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidArborescenceError(TempoArbError, ValueError):
    """An arc set is not a (time-respecting) arborescence of the digraph."""

    def __init__(self, diagnostics: Iterable[str]) -> None:
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics) or "invalid arborescence")


class RootMismatchError(TempoArbError, ValueError):
    """Two arborescences were expected to share a root but do not."""

    def __init__(self, root1: int, root2: int) -> None:
        self.root1 = root1
        self.root2 = root2
        super().__init__(f"roots differ: {root1} != {root2}")


class BudgetExceededError(TempoArbError):
    """An exhaustive search would exceed its configured budget."""

    def __init__(self, size: int, budget: int, root: int | None = None) -> None:
        self.size = size
        self.budget = budget
        self.root = root
        where = f" at root {root}" if root is not None else ""
        super().__init__(f"search space {size} exceeds budget {budget}{where}")


class NotAVertexCoverError(TempoArbError, ValueError):
    """A vertex set leaves some edge uncovered."""

    def __init__(self, uncovered: tuple[int, int]) -> None:
        self.uncovered = uncovered
        super().__init__(f"edge {uncovered[0]}-{uncovered[1]} is not covered")


class InvalidSequenceError(TempoArbError, ValueError):
    """A reconfiguration sequence does not replay to valid arborescences."""


class InvariantViolation(TempoArbError, AssertionError):
    """An internally constructed object failed its own re-validation."""
