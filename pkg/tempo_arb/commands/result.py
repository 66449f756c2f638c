"""Exit statuses and the value every command handler returns."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from pydantic import BaseModel


class ExitStatus(IntEnum):
    """Process exit codes; the only machine contract of the command line."""

    SUCCESS = 0
    NO = 1
    INPUT_ERROR = 2
    BUDGET_EXCEEDED = 3

    @property
    def word(self) -> str:
        """Status word used in the JSON envelope."""
        return _WORDS[self]


_WORDS = {
    ExitStatus.SUCCESS: "ok",
    ExitStatus.NO: "no",
    ExitStatus.INPUT_ERROR: "input-error",
    ExitStatus.BUDGET_EXCEEDED: "budget-exceeded",
}


@dataclass(frozen=True, slots=True)
class CommandResult:
    """Line-oriented text for stdout plus the same result as a schema for ``--json``."""

    status: ExitStatus
    text: str
    payload: BaseModel | None = None
