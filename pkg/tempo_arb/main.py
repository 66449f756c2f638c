"""tempo-arb command-line entrypoint."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import BaseModel, ValidationError
from pythonjsonlogger.json import JsonFormatter

from tempo_arb.commands import hardness, listing, minimal, reconfigure, search, validate
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.config import get_settings
from tempo_arb.errors import BudgetExceededError
from tempo_arb.schemas import CommandEnvelope

logger = logging.getLogger(__name__)

_COMMANDS = (validate, minimal, reconfigure, hardness, listing, search)


def _configure_logging() -> None:
    """Configure root logger based on ENV and LOG_FORMAT settings; logs go to stderr."""
    settings = get_settings()
    level = logging.DEBUG if settings.env != "prod" else logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    if settings.log_format == "json":
        handler.setFormatter(JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s [%(name)s] %(message)s", "%H:%M:%S")
        )
    logging.basicConfig(level=level, handlers=[handler], force=True)


def build_parser() -> argparse.ArgumentParser:
    """Build the parser with one subcommand per command module."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON envelope")

    parser = argparse.ArgumentParser(
        prog="tempo-arb",
        description="Time-respecting arborescences in temporal digraphs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in _COMMANDS:
        module.register(subparsers, common)
    return parser


def _dispatch(args: argparse.Namespace) -> CommandResult:
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        logger.warning("Budget exceeded: %s", exc)
        return _failure(ExitStatus.BUDGET_EXCEEDED, exc)
    except (ValueError, OSError) as exc:
        # FormatError, InvalidArborescenceError and the other input errors are ValueErrors.
        return _failure(ExitStatus.INPUT_ERROR, exc)


def _failure(status: ExitStatus, exc: Exception) -> CommandResult:
    print(f"error: {exc}", file=sys.stderr)
    return CommandResult(status=status, text="")


def _emit(command: str, result: CommandResult, as_json: bool) -> None:
    if not as_json:
        sys.stdout.write(result.text)
        return
    payload: object = None
    if isinstance(result.payload, BaseModel):
        payload = result.payload.model_dump(mode="json")
    envelope = CommandEnvelope(
        command=command,
        exit_code=int(result.status),
        status=result.status.word,
        result=payload,
    )
    sys.stdout.write(envelope.model_dump_json(indent=2) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status.

    Settings are loaded before dispatch, so an invalid ``TEMPO_ARB_*`` value is
    reported as an input error rather than escaping as a traceback.
    """
    args = build_parser().parse_args(argv)
    try:
        _configure_logging()
    except ValidationError as exc:
        result = _failure(ExitStatus.INPUT_ERROR, exc)
    else:
        result = _dispatch(args)
    _emit(args.command, result, args.json)
    return int(result.status)


if __name__ == "__main__":
    raise SystemExit(main())
