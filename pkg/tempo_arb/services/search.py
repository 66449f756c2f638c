"""Randomized search for unreachable arborescence pairs with distinct roots."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from tempo_arb.config import get_settings
from tempo_arb.digraph import Arborescence, TemporalDigraph
from tempo_arb.errors import InvariantViolation
from tempo_arb.services.free_root import build_root_adjacency_graph, reachable
from tempo_arb.services.oracle import build_reconfiguration_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NoInstance:
    """Two time-respecting arborescences with different roots and no sequence between them."""

    digraph: TemporalDigraph
    tree1: Arborescence
    tree2: Arborescence
    seed: int
    attempt: int


def random_temporal_digraph(
    rng: random.Random,
    n: int,
    m: int,
    max_label: int,
) -> TemporalDigraph:
    """Draw ``m`` arcs between distinct uniform endpoints with integer labels in 1..max_label."""
    if n < 2 and m > 0:
        raise ValueError("arcs need at least two vertices")
    arcs: list[tuple[int, int, int]] = []
    for _ in range(m):
        tail, head = rng.sample(range(n), 2)
        arcs.append((tail, head, rng.randint(1, max_label)))
    return TemporalDigraph(n, arcs)


def _unreachable_pair(digraph: TemporalDigraph) -> tuple[Arborescence, Arborescence] | None:
    """First canonical pair of arborescences with distinct roots in different oracle components."""
    graph = build_reconfiguration_graph(digraph)
    component_of: dict[int, int] = {}
    for label, component in enumerate(graph.components()):
        component_of.update(dict.fromkeys(component, label))
    for i, first in enumerate(graph.nodes):
        for j in range(i + 1, len(graph.nodes)):
            second = graph.nodes[j]
            if first.root != second.root and component_of[i] != component_of[j]:
                return first, second
    return None


def find_no_instance(
    seed: int,
    *,
    max_vertices: int | None = None,
    max_arcs: int | None = None,
    max_label: int | None = None,
    attempts: int | None = None,
) -> NoInstance | None:
    """Search random digraphs for a distinct-root pair that cannot be reconfigured.

    Candidates are screened with the root graph first (a feasible root set
    split into several components) and then confirmed by the brute-force
    oracle; the pair returned is unreachable according to both.

    Args:
        seed: Seed for ``random.Random``; the same seed gives the same result.
        max_vertices: Largest vertex count drawn (at least 3).
        max_arcs: Largest arc count drawn.
        max_label: Labels are drawn from 1..max_label.
        attempts: Number of digraphs to try.

    Returns:
        The first instance found, or None.

    Raises:
        InvariantViolation: If the oracle and the root graph disagree.
    """
    search = get_settings().search
    max_vertices = max_vertices or search.max_vertices
    max_arcs = max_arcs or search.max_arcs
    max_label = max_label or search.max_label
    attempts = attempts or search.attempts

    rng = random.Random(seed)
    for attempt in range(attempts):
        n = rng.randint(3, max_vertices)
        m = rng.randint(n - 1, max(n - 1, max_arcs))
        digraph = random_temporal_digraph(rng, n, m, max_label)
        root_graph = build_root_adjacency_graph(digraph)
        if len(root_graph.components()) < 2:
            continue
        pair = _unreachable_pair(digraph)
        if pair is None:
            raise InvariantViolation(
                f"root graph is disconnected but the oracle connects everything (attempt {attempt})"
            )
        tree1, tree2 = pair
        if reachable(digraph, tree1, tree2, root_graph=root_graph):
            raise InvariantViolation(f"oracle and root graph disagree on attempt {attempt}")
        logger.info("Found a no-instance on attempt %d (n=%d, m=%d)", attempt, n, m)
        return NoInstance(digraph=digraph, tree1=tree1, tree2=tree2, seed=seed, attempt=attempt)

    logger.warning("No no-instance found in %d attempt(s) with seed %d", attempts, seed)
    return None
