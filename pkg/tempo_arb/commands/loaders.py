"""File loading shared by the command handlers."""

from __future__ import annotations

import logging
from pathlib import Path

from tempo_arb.digraph import Arborescence, TemporalDigraph
from tempo_arb.formats import parse_arborescence, parse_digraph

logger = logging.getLogger(__name__)


def read_text(path: str | Path) -> str:
    """Read a UTF-8 file; OSError propagates and becomes an input error."""
    return Path(path).read_text(encoding="utf-8")


def load_digraph(path: str | Path) -> TemporalDigraph:
    """Read and parse a digraph file."""
    digraph = parse_digraph(read_text(path))
    logger.debug("Loaded %s from %s", digraph, path)
    return digraph


def load_arborescence(path: str | Path, digraph: TemporalDigraph) -> Arborescence:
    """Read an arborescence file and check its arcs against ``digraph``."""
    return parse_arborescence(read_text(path), digraph)
