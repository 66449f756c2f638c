"""``validate``: structural and time-respecting checks of an arborescence file."""

from __future__ import annotations

import argparse
import logging

from tempo_arb.commands.loaders import load_digraph, read_text
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.digraph import (
    Arborescence,
    is_arborescence,
    time_respecting_violations,
)
from tempo_arb.errors import InvalidArborescenceError
from tempo_arb.formats import parse_arborescence_record
from tempo_arb.schemas import ValidationReport

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``validate`` subcommand.

    Args:
        subparsers: Subcommand collection of the top-level parser.
        parent: Parser holding the shared ``--json`` option.
    """
    parser = subparsers.add_parser(
        "validate", parents=[parent], help="check that an arborescence is time-respecting"
    )
    parser.add_argument("digraph_file")
    parser.add_argument("arborescence_file")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """Check the arborescence file against the digraph and report each violation."""
    digraph = load_digraph(args.digraph_file)
    root, arc_ids = parse_arborescence_record(read_text(args.arborescence_file))

    structural = is_arborescence(digraph, arc_ids, root)
    violations: list[tuple[int, int]] = []
    diagnostics: list[str] = []
    if structural:
        tree = Arborescence.from_arcs(digraph, root, arc_ids)
        violations = time_respecting_violations(digraph, tree)
    else:
        try:
            Arborescence.from_arcs(digraph, root, arc_ids)
            diagnostics.append(f"arcs do not form a spanning arborescence rooted at {root}")
        except InvalidArborescenceError as exc:
            diagnostics.extend(exc.diagnostics)
    respecting = structural and not violations

    lines = [
        f"arborescence: {'yes' if structural else 'no'}",
        f"time-respecting: {'yes' if respecting else 'no'}",
    ]
    lines.extend(f"reason: {reason}" for reason in diagnostics)
    for parent_arc, child_arc in violations:
        lines.append(
            f"violation: arc {parent_arc} (label {digraph.arcs[parent_arc].label}) "
            f"precedes arc {child_arc} (label {digraph.arcs[child_arc].label})"
        )

    report = ValidationReport(
        is_arborescence=structural,
        is_time_respecting=respecting,
        violations=violations,
        diagnostics=diagnostics,
    )
    status = ExitStatus.SUCCESS if respecting else ExitStatus.NO
    logger.debug("Validation of %s: %s", args.arborescence_file, status.word)
    return CommandResult(status=status, text="\n".join(lines) + "\n", payload=report)
