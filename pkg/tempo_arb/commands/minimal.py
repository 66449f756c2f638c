"""``minimal``: minimal time-respecting arborescence at a given root."""

from __future__ import annotations

import argparse

from tempo_arb.commands.loaders import load_digraph
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.formats import format_arborescence
from tempo_arb.schemas import MinimalResponse
from tempo_arb.services.minimal import minimal_arborescence


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``minimal`` subcommand."""
    parser = subparsers.add_parser(
        "minimal", parents=[parent], help="compute a minimal time-respecting arborescence"
    )
    parser.add_argument("digraph_file")
    parser.add_argument("--root", type=int, required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """Print a minimal arborescence for ``--root``, or ``infeasible`` when none exists."""
    digraph = load_digraph(args.digraph_file)
    result = minimal_arborescence(digraph, args.root)
    payload = MinimalResponse.from_result(digraph, args.root, result)
    if result is None:
        return CommandResult(status=ExitStatus.NO, text="infeasible\n", payload=payload)

    lines = [format_arborescence(result.tree).rstrip("\n")]
    lines.extend(f"# d' {v} {label}" for v, label in sorted(result.d_prime.items()))
    return CommandResult(status=ExitStatus.SUCCESS, text="\n".join(lines) + "\n", payload=payload)
