"""``enumerate``: every time-respecting arborescence and the reconfiguration graph."""

from __future__ import annotations

import argparse

from tempo_arb.commands.loaders import load_digraph
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.schemas import ArborescenceResponse, EnumerationResponse
from tempo_arb.services.oracle import build_reconfiguration_graph


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``enumerate`` subcommand."""
    parser = subparsers.add_parser(
        "enumerate", parents=[parent], help="list all time-respecting arborescences"
    )
    parser.add_argument("digraph_file")
    parser.add_argument("--dot", action="store_true", help="append a Graphviz rendering")
    parser.add_argument("--budget", type=int, default=None, help="enumeration budget per root")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """List every time-respecting arborescence grouped by reconfiguration component."""
    digraph = load_digraph(args.digraph_file)
    graph = build_reconfiguration_graph(digraph, budget=args.budget)
    components = graph.components()

    lines = [f"nodes {len(graph.nodes)}", f"edges {graph.edge_count}"]
    lines.extend(
        f"node {i} root {tree.root} arcs {' '.join(map(str, tree.key))}".rstrip()
        for i, tree in enumerate(graph.nodes)
    )
    lines.extend(
        f"component {i} {' '.join(map(str, nodes))}" for i, nodes in enumerate(components)
    )
    dot = graph.to_dot(digraph) if args.dot else None
    text = "\n".join(lines) + "\n" + (dot or "")

    payload = EnumerationResponse(
        node_count=len(graph.nodes),
        edge_count=graph.edge_count,
        arborescences=[ArborescenceResponse.from_tree(digraph, tree) for tree in graph.nodes],
        components=components,
        dot=dot,
    )
    return CommandResult(status=ExitStatus.SUCCESS, text=text, payload=payload)
