"""Minimal time-respecting r-arborescences by greedy earliest arrival.

Grows a reached set R from the root, each time adding the arc leaving R with
the smallest label among those whose label is at least the arrival label of
their tail. The arrival label d'(v) of every reached vertex is the label of
the arc that reached it; d'(root) = 0.
"""

from __future__ import annotations

import heapq
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from tempo_arb.digraph import ZERO, Arborescence, TemporalDigraph, require_time_respecting
from tempo_arb.errors import InvariantViolation

logger = logging.getLogger(__name__)

_UNREACHED = -2
_ROOT_RANK = -1


@dataclass(frozen=True, slots=True)
class MinimalArbResult:
    """Minimal arborescence with its arrival labels and construction order."""

    tree: Arborescence
    d_prime: Mapping[int, Fraction]
    selection_order: tuple[int, ...]


def minimal_arborescence(
    digraph: TemporalDigraph,
    root: int,
    *,
    blocked: frozenset[int] = frozenset(),
    on_select: Callable[[int], None] | None = None,
) -> MinimalArbResult | None:
    """Compute a minimal time-respecting arborescence rooted at ``root``.

    Ties on the smallest label are broken by the smallest arc id. Each arc
    is pushed once, when its tail is reached and only if its label is at
    least the tail's arrival label; arcs whose head got reached meanwhile are
    discarded on pop.

    Args:
        digraph: Temporal digraph.
        root: Root vertex.
        blocked: Arc ids to ignore, as if deleted from the digraph.
        on_select: Called with each selected arc id, in selection order.

    Returns:
        The minimal arborescence, or None when no time-respecting
        arborescence rooted at ``root`` exists.

    Raises:
        ValueError: If ``root`` is not a vertex.
    """
    n = digraph.n
    if not 0 <= root < n:
        raise ValueError(f"root {root} is not a vertex of a digraph with {n} vertices")

    arcs = digraph.arcs
    ranks = digraph.label_ranks
    out_index = digraph.out_index
    arrival = [_UNREACHED] * n
    arrival[root] = _ROOT_RANK
    order: list[int] = []
    heap: list[tuple[int, int]] = []

    def expand(vertex: int, floor: int) -> None:
        for arc_id in out_index[vertex]:
            rank = ranks[arc_id]
            if rank >= floor and arc_id not in blocked and arrival[arcs[arc_id].head] == _UNREACHED:
                heapq.heappush(heap, (rank, arc_id))

    expand(root, _ROOT_RANK)
    while heap and len(order) < n - 1:
        rank, arc_id = heapq.heappop(heap)
        head = arcs[arc_id].head
        if arrival[head] != _UNREACHED:
            continue
        arrival[head] = rank
        order.append(arc_id)
        if on_select is not None:
            on_select(arc_id)
        expand(head, rank)

    if len(order) < n - 1:
        logger.debug(
            "No time-respecting arborescence rooted at %d (%d of %d vertices reached)",
            root,
            len(order) + 1,
            n,
        )
        return None

    d_prime: dict[int, Fraction] = {root: ZERO}
    for arc_id in order:
        d_prime[arcs[arc_id].head] = arcs[arc_id].label
    tree = Arborescence(root, {arcs[arc_id].head: arc_id for arc_id in order})
    return MinimalArbResult(
        tree=tree,
        d_prime=MappingProxyType(d_prime),
        selection_order=tuple(order),
    )


def is_minimal(digraph: TemporalDigraph, tree: Arborescence) -> bool:
    """Check that every in-arc of ``tree`` carries the earliest arrival label.

    Raises:
        InvalidArborescenceError: If ``tree`` is not a time-respecting
            arborescence of ``digraph``.
    """
    require_time_respecting(digraph, tree)
    result = minimal_arborescence(digraph, tree.root)
    if result is None:
        raise InvariantViolation(
            f"greedy found no arborescence at root {tree.root} although one was given"
        )
    return all(
        digraph.arcs[arc_id].label == result.d_prime[v] for v, arc_id in tree.in_arc.items()
    )
