"""Envelope wrapping every command result under ``--json``."""

from typing import Any

from pydantic import BaseModel


class CommandEnvelope(BaseModel):
    """Command name, exit code, one-word status and the command's result."""

    command: str
    exit_code: int
    status: str
    result: Any = None
