"""``gen-hard``: write a reconfiguration instance reduced from Vertex Cover."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from tempo_arb.commands.loaders import read_text
from tempo_arb.commands.result import CommandResult, ExitStatus
from tempo_arb.formats import format_arborescence, format_digraph, parse_graph
from tempo_arb.schemas import HardnessSidecar
from tempo_arb.services.hardness import LabelVariant, VertexCoverInstance, reduce_vertex_cover

logger = logging.getLogger(__name__)

DIGRAPH_FILE = "digraph.txt"
TREE1_FILE = "t1.arb"
TREE2_FILE = "t2.arb"
SIDECAR_FILE = "instance.json"


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Add the ``gen-hard`` subcommand."""
    parser = subparsers.add_parser(
        "gen-hard", parents=[parent], help="reduce a Vertex Cover instance"
    )
    parser.add_argument("graph_file")
    parser.add_argument("k", type=int)
    parser.add_argument(
        "--variant",
        type=LabelVariant,
        choices=list(LabelVariant),
        default=LabelVariant.STANDARD,
    )
    parser.add_argument("--out-dir", type=Path, default=Path("."))
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    """Reduce the Vertex Cover graph and write the instance files to ``--out-dir``."""
    n, edges = parse_graph(read_text(args.graph_file))
    vc = VertexCoverInstance(n=n, edges=tuple(edges), k=args.k)
    instance = reduce_vertex_cover(vc, args.variant)
    sidecar = HardnessSidecar.from_instance(instance)

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {
        DIGRAPH_FILE: format_digraph(instance.digraph),
        TREE1_FILE: format_arborescence(instance.tree1),
        TREE2_FILE: format_arborescence(instance.tree2),
        SIDECAR_FILE: sidecar.model_dump_json(indent=2) + "\n",
    }
    for name, content in written.items():
        (out_dir / name).write_text(content, encoding="utf-8")
    logger.info("Wrote hardness instance to %s", out_dir)

    lines = [
        f"variant {instance.variant}",
        f"vertices {instance.digraph.n}",
        f"arcs {instance.digraph.m}",
        f"ell {instance.ell}",
    ]
    lines.extend(f"wrote {out_dir / name}" for name in written)
    return CommandResult(status=ExitStatus.SUCCESS, text="\n".join(lines) + "\n", payload=sidecar)
