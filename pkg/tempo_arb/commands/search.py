"""``search-no-instance``: seeded search for an unreachable distinct-root pair."""

from __future__ import annotations

import argparse

from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.formats import format_arborescence, format_digraph
from tempo_arb.schemas import ArborescenceResponse, NoInstanceReport
from tempo_arb.services.search import find_no_instance


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``search-no-instance`` subcommand."""
    parser = subparsers.add_parser(
        "search-no-instance", parents=[parent], help="find an unreachable pair of arborescences"
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--attempts", type=int, default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """Search seeded random digraphs for a pair with no reconfiguration sequence."""
    found = find_no_instance(args.seed, attempts=args.attempts)
    if found is None:
        return CommandResult(
            status=ExitStatus.NO,
            text="not found\n",
            payload=NoInstanceReport(found=False, seed=args.seed),
        )

    sections = [
        f"# seed {found.seed} attempt {found.attempt}",
        "# digraph",
        format_digraph(found.digraph).rstrip("\n"),
        "# t1",
        format_arborescence(found.tree1).rstrip("\n"),
        "# t2",
        format_arborescence(found.tree2).rstrip("\n"),
    ]
    report = NoInstanceReport(
        found=True,
        seed=found.seed,
        attempt=found.attempt,
        digraph=format_digraph(found.digraph),
        tree1=ArborescenceResponse.from_tree(found.digraph, found.tree1),
        tree2=ArborescenceResponse.from_tree(found.digraph, found.tree2),
    )
    return CommandResult(status=ExitStatus.SUCCESS, text="\n".join(sections) + "\n", payload=report)
