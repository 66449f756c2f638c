"""Brute-force ground truth for desk-sized temporal digraphs.

Enumerates every time-respecting arborescence by choosing one in-arc per
non-root vertex and filtering, builds the full reconfiguration graph, and
answers shortest-sequence and earliest-arrival questions exhaustively.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from tempo_arb.config import get_settings
from tempo_arb.digraph import ZERO, Arborescence, TemporalDigraph
from tempo_arb.errors import BudgetExceededError
from tempo_arb.services.fixed_root import ReconfSequence, ReconfStep

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ReconfigurationGraph:
    """All time-respecting arborescences, joined when they differ by one swap."""

    nodes: tuple[Arborescence, ...]
    adjacency: tuple[tuple[int, ...], ...]
    index: Mapping[tuple[int, ...], int] = field(repr=False)

    @property
    def edge_count(self) -> int:
        """Number of single-swap adjacencies."""
        return sum(len(neighbours) for neighbours in self.adjacency) // 2

    def index_of(self, tree: Arborescence) -> int | None:
        """Node index of ``tree``, or ``None`` if it is not time-respecting."""
        position = self.index.get(tree.key)
        if position is None or self.nodes[position].root != tree.root:
            return None
        return position

    def distances_from(self, source: int) -> list[int | None]:
        """Breadth-first distances from node ``source`` (None when unreachable)."""
        distance: list[int | None] = [None] * len(self.nodes)
        distance[source] = 0
        queue = deque([source])
        while queue:
            node = queue.popleft()
            for neighbour in self.adjacency[node]:
                if distance[neighbour] is None:
                    distance[neighbour] = distance[node] + 1  # type: ignore[operator]
                    queue.append(neighbour)
        return distance

    def to_networkx(self) -> nx.Graph:
        """Undirected networkx copy with node indices as vertices."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.nodes)))
        graph.add_edges_from(
            (i, j) for i, neighbours in enumerate(self.adjacency) for j in neighbours if i < j
        )
        return graph

    def components(self) -> list[list[int]]:
        """Connected components as sorted node-index lists, in canonical order."""
        return sorted(
            (sorted(component) for component in nx.connected_components(self.to_networkx())),
            key=lambda component: component[0],
        )

    def root_class(self, root: int) -> list[int]:
        """Indices of the nodes rooted at ``root``."""
        return [i for i, tree in enumerate(self.nodes) if tree.root == root]

    def to_dot(self, digraph: TemporalDigraph | None = None) -> str:
        """Graphviz rendering; node labels are the root and the arc-id list."""
        lines = ["graph reconfiguration {"]
        for i, tree in enumerate(self.nodes):
            root = digraph.vertex_name(tree.root) if digraph is not None else str(tree.root)
            arcs = ",".join(map(str, tree.key))
            lines.append(f'  n{i} [label="{root}: {arcs}"];')
        for i, neighbours in enumerate(self.adjacency):
            lines.extend(f"  n{i} -- n{j};" for j in neighbours if i < j)
        lines.append("}")
        return "\n".join(lines) + "\n"


def _enumerate_root(digraph: TemporalDigraph, root: int, budget: int) -> list[Arborescence]:
    others = [v for v in range(digraph.n) if v != root]
    choices = [digraph.in_index[v] for v in others]
    if any(not options for options in choices):
        return []
    size = math.prod(len(options) for options in choices)
    if size > budget:
        logger.warning("Enumeration at root %d needs %d choices, budget is %d", root, size, budget)
        raise BudgetExceededError(size, budget, root=root)

    arcs = digraph.arcs
    ranks = digraph.label_ranks
    found: list[Arborescence] = []
    for combo in itertools.product(*choices):
        parent_arc = dict(zip(others, combo, strict=True))
        if _reaches_root(arcs, parent_arc, root) and all(
            arcs[arc_id].tail == root or ranks[parent_arc[arcs[arc_id].tail]] <= ranks[arc_id]
            for arc_id in combo
        ):
            found.append(Arborescence(root, parent_arc))
    return found


def _reaches_root(arcs: Sequence, parent_arc: Mapping[int, int], root: int) -> bool:
    """True iff following in-arcs from every vertex ends at ``root`` without a cycle."""
    settled = {root}
    for start in parent_arc:
        walk: list[int] = []
        on_walk: set[int] = set()
        vertex = start
        while vertex not in settled:
            if vertex in on_walk:
                return False
            on_walk.add(vertex)
            walk.append(vertex)
            vertex = arcs[parent_arc[vertex]].tail
        settled.update(walk)
    return True


def enumerate_all(digraph: TemporalDigraph, *, budget: int | None = None) -> list[Arborescence]:
    """Every time-respecting arborescence of ``digraph``, for every root.

    Args:
        digraph: Temporal digraph.
        budget: Maximum in-arc choice product per root; defaults to
            ``Settings.effective_enumeration_budget``.

    Returns:
        Arborescences sorted by sorted arc-id vector, then root.

    Raises:
        BudgetExceededError: If some root's choice space exceeds the budget.
    """
    if budget is None:
        budget = get_settings().effective_enumeration_budget
    found: list[Arborescence] = []
    for root in range(digraph.n):
        found.extend(_enumerate_root(digraph, root, budget))
    found.sort(key=lambda tree: (tree.key, tree.root))
    logger.debug("Enumerated %d time-respecting arborescence(s)", len(found))
    return found


def build_reconfiguration_graph(
    digraph: TemporalDigraph,
    *,
    budget: int | None = None,
) -> ReconfigurationGraph:
    """Build the reconfiguration graph over all time-respecting arborescences.

    Neighbours of a node are found by swapping one in-arc: either for another
    arc into the same vertex (same root) or, for the new root ``v``, for an
    arc into the old root.

    Raises:
        BudgetExceededError: Propagated from enumeration.
    """
    nodes = tuple(enumerate_all(digraph, budget=budget))
    index = {tree.key: i for i, tree in enumerate(nodes)}
    adjacency: list[set[int]] = [set() for _ in nodes]
    for i, tree in enumerate(nodes):
        arc_ids = tree.arc_ids
        for vertex, current in tree.in_arc.items():
            rest = arc_ids - {current}
            candidates = itertools.chain(
                (a for a in digraph.in_index[vertex] if a != current),
                digraph.in_index[tree.root],
            )
            for replacement in candidates:
                j = index.get(tuple(sorted(rest | {replacement})))
                if j is not None and j != i:
                    adjacency[i].add(j)
                    adjacency[j].add(i)

    graph = ReconfigurationGraph(
        nodes=nodes,
        adjacency=tuple(tuple(sorted(neighbours)) for neighbours in adjacency),
        index=index,
    )
    logger.info(
        "Reconfiguration graph: %d node(s), %d edge(s)", len(graph.nodes), graph.edge_count
    )
    return graph


def bfs_shortest(
    digraph: TemporalDigraph,
    tree1: Arborescence,
    tree2: Arborescence,
    *,
    graph: ReconfigurationGraph | None = None,
    budget: int | None = None,
) -> tuple[int, ReconfSequence] | None:
    """Exact shortest reconfiguration sequence by breadth-first search.

    Neighbours are expanded in canonical node order, so the returned
    sequence is deterministic.

    Returns:
        ``(length, sequence)``, or None when the two are not connected.

    Raises:
        ValueError: If either arborescence is not a node of the graph.
        BudgetExceededError: Propagated from enumeration.
    """
    if graph is None:
        graph = build_reconfiguration_graph(digraph, budget=budget)
    source = graph.index_of(tree1)
    target = graph.index_of(tree2)
    if source is None or target is None:
        raise ValueError("both arborescences must be time-respecting arborescences of the digraph")

    parent: dict[int, int | None] = {source: None}
    queue = deque([source])
    while queue and target not in parent:
        node = queue.popleft()
        for neighbour in graph.adjacency[node]:
            if neighbour not in parent:
                parent[neighbour] = node
                queue.append(neighbour)
    if target not in parent:
        return None

    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()

    steps: list[ReconfStep] = []
    for before, after in itertools.pairwise(path):
        (removed,) = graph.nodes[before].arc_ids - graph.nodes[after].arc_ids
        (added,) = graph.nodes[after].arc_ids - graph.nodes[before].arc_ids
        steps.append(ReconfStep(remove=removed, add=added))
    return len(steps), ReconfSequence(start=graph.nodes[source], steps=tuple(steps))


def oracle_d_all(digraph: TemporalDigraph, root: int) -> dict[int, Fraction]:
    """Earliest arrival labels by enumerating every time-respecting simple path from ``root``.

    Vertices with no time-respecting path from ``root`` are absent.
    """
    best: dict[int, Fraction] = {root: ZERO}
    visited = {root}

    def walk(vertex: int, last: Fraction) -> None:
        for arc in digraph.out_arcs(vertex):
            if arc.head in visited or arc.label < last:
                continue
            if arc.head not in best or arc.label < best[arc.head]:
                best[arc.head] = arc.label
            visited.add(arc.head)
            walk(arc.head, arc.label)
            visited.discard(arc.head)

    walk(root, ZERO)
    return best


def oracle_d(digraph: TemporalDigraph, root: int, vertex: int) -> Fraction | None:
    """Earliest arrival label of ``vertex`` from ``root``; None if undefined."""
    return oracle_d_all(digraph, root).get(vertex)
