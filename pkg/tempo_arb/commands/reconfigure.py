"""``reconfigure`` and ``shortest-exact``: sequences between two arborescences."""

from __future__ import annotations

import argparse
import logging
from typing import Literal

from tempo_arb.commands.loaders import load_arborescence, load_digraph
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.digraph import Arborescence, TemporalDigraph, require_time_respecting
from tempo_arb.formats import format_sequence
from tempo_arb.schemas import SequenceResponse
from tempo_arb.services.fixed_root import ReconfSequence, reconfigure_same_root
from tempo_arb.services.free_root import construct_sequence, reachable
from tempo_arb.services.oracle import bfs_shortest

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``reconfigure`` and ``shortest-exact`` subcommands, which share their inputs."""
    parser = subparsers.add_parser(
        "reconfigure", parents=[parent], help="build a reconfiguration sequence"
    )
    _add_inputs(parser)
    parser.add_argument(
        "--verify-only", action="store_true", help="only decide reachability"
    )
    parser.add_argument(
        "--verbose", action="store_true", help="list every intermediate arborescence"
    )
    parser.set_defaults(handler=run_reconfigure)

    parser = subparsers.add_parser(
        "shortest-exact", parents=[parent], help="exact shortest sequence by exhaustive search"
    )
    _add_inputs(parser)
    parser.add_argument("--budget", type=int, default=None, help="enumeration budget per root")
    parser.set_defaults(handler=run_shortest_exact, verbose=False)


def _add_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("digraph_file")
    parser.add_argument("arb1_file")
    parser.add_argument("arb2_file")


def _load(args: argparse.Namespace) -> tuple[TemporalDigraph, Arborescence, Arborescence]:
    digraph = load_digraph(args.digraph_file)
    tree1 = load_arborescence(args.arb1_file, digraph)
    tree2 = load_arborescence(args.arb2_file, digraph)
    require_time_respecting(digraph, tree1)
    require_time_respecting(digraph, tree2)
    return digraph, tree1, tree2


def _render(
    digraph: TemporalDigraph,
    sequence: ReconfSequence,
    claim: Literal["optimal", "valid"],
    verbose: bool,
) -> CommandResult:
    text = format_sequence(sequence, claim=claim)
    if verbose:
        text += "".join(
            f"# tree {i}: root {tree.root} arcs {' '.join(map(str, tree.key))}\n"
            for i, tree in enumerate(sequence.trees(digraph))
        )
    payload = SequenceResponse.from_sequence(digraph, sequence, claim, with_trees=verbose)
    return CommandResult(status=ExitStatus.SUCCESS, text=text, payload=payload)


def _unreachable() -> CommandResult:
    return CommandResult(
        status=ExitStatus.NO, text="unreachable\n", payload=SequenceResponse(reachable=False)
    )


def run_reconfigure(args: argparse.Namespace) -> CommandResult:
    """Decide reachability and, unless ``--verify-only``, print a valid sequence.

    Returns:
        Status ``SUCCESS`` with the sequence, or ``NO`` with ``unreachable`` when
        the two arborescences lie in different components.
    """
    digraph, tree1, tree2 = _load(args)
    if args.verify_only:
        if not reachable(digraph, tree1, tree2):
            return _unreachable()
        return CommandResult(
            status=ExitStatus.SUCCESS, text="reachable\n", payload=SequenceResponse(reachable=True)
        )

    if tree1.root == tree2.root:
        sequence = reconfigure_same_root(digraph, tree1, tree2)
        return _render(digraph, sequence, "optimal", args.verbose)
    built = construct_sequence(digraph, tree1, tree2)
    if built is None:
        return _unreachable()
    return _render(digraph, built, "valid", args.verbose)


def run_shortest_exact(args: argparse.Namespace) -> CommandResult:
    """Print a shortest sequence found by exhaustive search within ``--budget``."""
    digraph, tree1, tree2 = _load(args)
    found = bfs_shortest(digraph, tree1, tree2, budget=args.budget)
    if found is None:
        return _unreachable()
    length, sequence = found
    logger.info("Exact shortest sequence has length %d", length)
    return _render(digraph, sequence, "optimal", args.verbose)
