"""Reachability between time-respecting arborescences with different roots.

Two roots r1, r2 are adjacent in the root graph when one of three conditions
holds:

- cond-i: an arc f = (r2, r1) exists and some time-respecting r1-arborescence
  has every arc leaving r1 (other than into r2) labelled at least f;
- cond-ii: the mirror image with e = (r1, r2);
- cond-iii': for some label t, r1 and r2 share a strongly connected component
  H of the label-t layer, and contracting H leaves a time-respecting
  arborescence from the merged vertex using only labels >= t.

Arborescences with roots in the same component of the root graph are
mutually reachable; sequences are assembled from one-swap root changes
stitched together with same-root reconfiguration.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import networkx as nx

from tempo_arb.digraph import (
    Arborescence,
    ContractionResult,
    TemporalDigraph,
    contract,
    require_time_respecting,
    scc_decompose,
)
from tempo_arb.errors import InvariantViolation
from tempo_arb.services.fixed_root import (
    ReconfSequence,
    ReconfStep,
    reconfigure_same_root,
    verify_sequence,
)
from tempo_arb.services.minimal import MinimalArbResult, minimal_arborescence

logger = logging.getLogger(__name__)


class WitnessKind(StrEnum):
    """Which adjacency condition a witness certifies."""

    COND_I = "cond-i"
    COND_II = "cond-ii"
    COND_III_PRIME = "cond-iii-prime"


@dataclass(frozen=True, slots=True)
class AdjacencyWitness:
    """Certificate that roots ``r1`` and ``r2`` are adjacent.

    For cond-i / cond-ii, ``arc`` is the arc entering the old root
    (``f = (r2, r1)``) or the new root (``e = (r1, r2)``), and ``first`` /
    ``second`` are one-swap apart arborescences rooted at ``r1`` / ``r2``.
    For cond-iii', ``label`` and ``component`` identify the extendible
    strongly connected component of that label's layer.
    """

    kind: WitnessKind
    r1: int
    r2: int
    arc: int | None = None
    first: Arborescence | None = None
    second: Arborescence | None = None
    label: Fraction | None = None
    component: frozenset[int] = frozenset()


@dataclass(frozen=True, slots=True)
class AdjacentPair:
    """Two arborescences with different roots that differ by one swap."""

    first: Arborescence
    second: Arborescence
    cycle: tuple[int, ...] = ()

    @property
    def step(self) -> ReconfStep:
        """The swap turning ``first`` into ``second``."""
        (removed,) = self.first.arc_ids - self.second.arc_ids
        (added,) = self.second.arc_ids - self.first.arc_ids
        return ReconfStep(remove=removed, add=added)


@dataclass(frozen=True, eq=False)
class RootAdjacencyGraph:
    """Undirected graph on feasible roots whose edges carry adjacency witnesses."""

    feasible_roots: frozenset[int]
    graph: nx.Graph = field(repr=False)

    @property
    def edges(self) -> Mapping[tuple[int, int], AdjacencyWitness]:
        """Witness per adjacent root pair, keyed with the smaller root first."""
        return {
            (min(u, v), max(u, v)): data["witness"] for u, v, data in self.graph.edges(data=True)
        }

    def witness(self, r1: int, r2: int) -> AdjacencyWitness | None:
        """Witness certifying that ``r1`` and ``r2`` are adjacent, or ``None``."""
        data = self.graph.get_edge_data(r1, r2)
        return None if data is None else data["witness"]

    def connected(self, r1: int, r2: int) -> bool:
        """Whether both roots are feasible and joined by a path of adjacencies.

        Args:
            r1: Root of the first arborescence.
            r2: Root of the second arborescence.

        Returns:
            ``False`` when either root admits no time-respecting arborescence.
        """
        if r1 not in self.feasible_roots or r2 not in self.feasible_roots:
            return False
        return nx.has_path(self.graph, r1, r2)

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by smallest root."""
        return sorted((frozenset(c) for c in nx.connected_components(self.graph)), key=min)

    def shortest_root_path(self, r1: int, r2: int) -> list[int] | None:
        """Fewest-hop sequence of roots from ``r1`` to ``r2``, both ends included."""
        if not self.connected(r1, r2):
            return None
        return list(nx.shortest_path(self.graph, r1, r2))


class LabelComponentIndex:
    """Strongly connected components of every single-label layer, computed lazily.

    Extendibility of a (label, component) pair does not depend on the root
    pair being examined, so it is memoized here too.
    """

    def __init__(self, digraph: TemporalDigraph) -> None:
        self._digraph = digraph
        self._arcs_by_label: dict[Fraction, list[int]] = {}
        incident: list[set[Fraction]] = [set() for _ in range(digraph.n)]
        for arc in digraph.arcs:
            self._arcs_by_label.setdefault(arc.label, []).append(arc.id)
            incident[arc.tail].add(arc.label)
            incident[arc.head].add(arc.label)
        self._incident = incident
        self._components: dict[Fraction, dict[int, frozenset[int]]] = {}
        self._extendible: dict[tuple[Fraction, frozenset[int]], bool] = {}

    def shared_labels(self, r1: int, r2: int) -> list[Fraction]:
        """Labels carried by arcs at both vertices, increasing."""
        return sorted(self._incident[r1] & self._incident[r2])

    def component(self, label: Fraction, vertex: int) -> frozenset[int] | None:
        """Nontrivial strongly connected component of the ``label`` layer containing ``vertex``."""
        if label not in self._components:
            layer = self._digraph.subgraph(self._arcs_by_label.get(label, ()))
            members: dict[int, frozenset[int]] = {}
            for component in scc_decompose(layer.digraph):
                if len(component) > 1:
                    members.update(dict.fromkeys(component, component))
            self._components[label] = members
        return self._components[label].get(vertex)

    def is_extendible(self, label: Fraction, vertices: frozenset[int]) -> bool:
        """Whether the contraction of ``vertices`` extends using labels >= ``label``."""
        key = (label, vertices)
        if key not in self._extendible:
            found = extension_arborescence(self._digraph, vertices, label)
            self._extendible[key] = found is not None
        return self._extendible[key]


class OutLabelThresholds:
    """Per root, the largest in-arc label t for which blocking every out-arc below t stays feasible.

    Feasibility only gets harder as t grows, so the threshold is found by
    binary search over the labels of the arcs entering the root.
    """

    def __init__(self, digraph: TemporalDigraph) -> None:
        self._digraph = digraph
        self._best: dict[int, tuple[Fraction, Arborescence] | None] = {}

    def _attempt(self, root: int, label: Fraction) -> Arborescence | None:
        blocked = frozenset(arc.id for arc in self._digraph.out_arcs(root) if arc.label < label)
        result = minimal_arborescence(self._digraph, root, blocked=blocked)
        return None if result is None else result.tree

    def best(self, root: int) -> tuple[Fraction, Arborescence] | None:
        """Largest feasible threshold for ``root`` together with a witnessing arborescence.

        Args:
            root: Vertex whose in-arc labels are searched.

        Returns:
            ``(label, tree)`` where ``tree`` is rooted at ``root`` and uses no
            out-arc of ``root`` labelled below ``label``, or ``None`` when no
            in-arc label qualifies.
        """
        if root not in self._best:
            candidates = sorted({arc.label for arc in self._digraph.in_arcs(root)})
            found: tuple[Fraction, Arborescence] | None = None
            low, high = 0, len(candidates) - 1
            while low <= high:
                middle = (low + high) // 2
                tree = self._attempt(root, candidates[middle])
                if tree is None:
                    high = middle - 1
                else:
                    found = (candidates[middle], tree)
                    low = middle + 1
            self._best[root] = found
        return self._best[root]


def extension_arborescence(
    digraph: TemporalDigraph,
    vertices: frozenset[int],
    label: Fraction,
) -> tuple[ContractionResult, MinimalArbResult] | None:
    """Contract ``vertices`` and look for an arborescence using only labels >= ``label``.

    Returns:
        The contraction and the arborescence rooted at the merged vertex, or
        None if the contracted digraph has none.
    """
    contraction = contract(digraph, vertices)
    quotient = contraction.quotient
    blocked = frozenset(arc.id for arc in quotient.arcs if arc.label < label)
    result = minimal_arborescence(quotient, contraction.contracted_vertex, blocked=blocked)
    if result is None:
        return None
    return contraction, result


# --- Adjacency conditions ---


def check_cond_i(
    digraph: TemporalDigraph,
    r1: int,
    r2: int,
    *,
    thresholds: OutLabelThresholds | None = None,
) -> AdjacencyWitness | None:
    """Check the root change r1 -> r2 through an arc f = (r2, r1).

    Only the smallest-label parallel arc (r2, r1) is tried: a smaller label
    for f only weakens the constraint on the arcs leaving r1. With
    ``thresholds`` the greedy run is skipped whenever the shared per-root
    threshold already decides the pair.

    Raises:
        ValueError: If ``r1 == r2``.
    """
    if r1 == r2:
        raise ValueError("adjacency conditions need two distinct roots")
    candidates = [digraph.arcs[i] for i in digraph.in_index[r1] if digraph.arcs[i].tail == r2]
    if not candidates:
        return None
    f = min(candidates, key=lambda arc: (arc.label, arc.id))

    first: Arborescence | None = None
    if thresholds is not None:
        best = thresholds.best(r1)
        if best is not None and f.label <= best[0]:
            first = best[1]
        elif not any(
            arc.head == r2 and arc.label < f.label for arc in digraph.out_arcs(r1)
        ):
            return None
    if first is None:
        blocked = frozenset(
            arc.id for arc in digraph.out_arcs(r1) if arc.head != r2 and arc.label < f.label
        )
        result = minimal_arborescence(digraph, r1, blocked=blocked)
        if result is None:
            return None
        first = result.tree
    e = first.in_arc[r2]
    second = Arborescence.from_arcs(digraph, r2, (first.arc_ids - {e}) | {f.id})
    return AdjacencyWitness(WitnessKind.COND_I, r1, r2, arc=f.id, first=first, second=second)


def check_cond_ii(
    digraph: TemporalDigraph,
    r1: int,
    r2: int,
    *,
    thresholds: OutLabelThresholds | None = None,
) -> AdjacencyWitness | None:
    """Mirror image of :func:`check_cond_i`: the root change r2 -> r1 through e = (r1, r2)."""
    mirrored = check_cond_i(digraph, r2, r1, thresholds=thresholds)
    if mirrored is None:
        return None
    return AdjacencyWitness(
        WitnessKind.COND_II,
        r1,
        r2,
        arc=mirrored.arc,
        first=mirrored.second,
        second=mirrored.first,
    )


def check_cond_iii_prime(
    digraph: TemporalDigraph,
    r1: int,
    r2: int,
    *,
    index: LabelComponentIndex | None = None,
) -> AdjacencyWitness | None:
    """Check for an extendible single-label strongly connected component holding r1 and r2.

    Labels are tried in increasing order; the first success wins.

    Raises:
        ValueError: If ``r1 == r2``.
    """
    if r1 == r2:
        raise ValueError("adjacency conditions need two distinct roots")
    if index is None:
        index = LabelComponentIndex(digraph)
    for label in index.shared_labels(r1, r2):
        component = index.component(label, r1)
        if component is None or r2 not in component:
            continue
        if index.is_extendible(label, component):
            return AdjacencyWitness(
                WitnessKind.COND_III_PRIME, r1, r2, label=label, component=component
            )
    return None


def revalidate_witness(digraph: TemporalDigraph, witness: AdjacencyWitness) -> bool:
    """Re-run the check a witness came from and confirm it."""
    if witness.kind is WitnessKind.COND_III_PRIME:
        if witness.label is None:
            return False
        index = LabelComponentIndex(digraph)
        component = index.component(witness.label, witness.r1)
        return (
            component == witness.component
            and witness.r2 in component
            and index.is_extendible(witness.label, component)
        )
    if witness.first is None or witness.second is None or witness.arc is None:
        return False
    try:
        require_time_respecting(digraph, witness.first)
        require_time_respecting(digraph, witness.second)
    except ValueError:
        return False
    pair = AdjacentPair(witness.first, witness.second)
    try:
        step = pair.step
    except ValueError:
        return False
    expected = step.add if witness.kind is WitnessKind.COND_I else step.remove
    return (
        witness.first.root == witness.r1
        and witness.second.root == witness.r2
        and expected == witness.arc
    )


def build_root_adjacency_graph(digraph: TemporalDigraph) -> RootAdjacencyGraph:
    """Build the root graph over all feasible roots.

    Every unordered pair of feasible roots is tested with cond-i, cond-ii
    and cond-iii' in that order; the first witness found is stored.
    """
    feasible = [r for r in range(digraph.n) if minimal_arborescence(digraph, r) is not None]
    index = LabelComponentIndex(digraph)
    thresholds = OutLabelThresholds(digraph)
    graph = nx.Graph()
    graph.add_nodes_from(feasible)
    for r1, r2 in itertools.combinations(feasible, 2):
        witness = (
            check_cond_i(digraph, r1, r2, thresholds=thresholds)
            or check_cond_ii(digraph, r1, r2, thresholds=thresholds)
            or check_cond_iii_prime(digraph, r1, r2, index=index)
        )
        if witness is not None:
            graph.add_edge(r1, r2, witness=witness)

    logger.info(
        "Root adjacency graph: %d feasible root(s) of %d, %d edge(s)",
        len(feasible),
        digraph.n,
        graph.number_of_edges(),
    )
    return RootAdjacencyGraph(feasible_roots=frozenset(feasible), graph=graph)


def reachable(
    digraph: TemporalDigraph,
    tree1: Arborescence,
    tree2: Arborescence,
    *,
    root_graph: RootAdjacencyGraph | None = None,
) -> bool:
    """Decide whether ``tree1`` can be reconfigured into ``tree2``.

    Raises:
        InvalidArborescenceError: If either input is not a time-respecting
            arborescence of ``digraph``.
    """
    require_time_respecting(digraph, tree1)
    require_time_respecting(digraph, tree2)
    if tree1.root == tree2.root:
        return True
    if root_graph is None:
        root_graph = build_root_adjacency_graph(digraph)
    return root_graph.connected(tree1.root, tree2.root)


# --- Witness sequences ---


def _arc_path(
    adjacency: Mapping[int, Sequence[tuple[int, int]]], source: int, target: int
) -> list[int]:
    """Breadth-first arc path; neighbours are scanned in arc-id order."""
    parent: dict[int, int | None] = {source: None}
    via: dict[int, int] = {}
    queue = deque([source])
    while queue and target not in parent:
        vertex = queue.popleft()
        for arc_id, head in adjacency.get(vertex, ()):
            if head not in parent:
                parent[head] = vertex
                via[head] = arc_id
                queue.append(head)
    if target not in parent:
        raise InvariantViolation(f"no path from {source} to {target} inside the component")
    path: list[int] = []
    vertex = target
    while vertex != source:
        path.append(via[vertex])
        vertex = parent[vertex]  # type: ignore[assignment]
    path.reverse()
    return path


def expand_component_edge(
    digraph: TemporalDigraph,
    label: Fraction,
    component: frozenset[int],
    source: int,
    target: int,
) -> list[AdjacentPair]:
    """Turn a cond-iii' edge into a chain of single-cycle root changes.

    Follows a shortest label-``label`` path from ``source`` to ``target``
    inside ``component``. Each arc (p, q) on it is closed into a cycle by a
    shortest return path q -> p; contracting the cycle yields an outside
    arborescence T_C, and the pair is (T_C + C - f rooted at p,
    T_C + C - e rooted at q) where e enters q and f enters p.
    """
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for arc in digraph.arcs:
        if arc.label == label and arc.tail in component and arc.head in component:
            adjacency.setdefault(arc.tail, []).append((arc.id, arc.head))

    pairs: list[AdjacentPair] = []
    for arc_id in _arc_path(adjacency, source, target):
        p, q = digraph.arcs[arc_id].tail, digraph.arcs[arc_id].head
        back = _arc_path(adjacency, q, p)
        cycle = (arc_id, *back)
        cycle_vertices = frozenset(digraph.arcs[a].tail for a in cycle)
        extension = extension_arborescence(digraph, cycle_vertices, label)
        if extension is None:
            raise InvariantViolation(
                f"cycle {list(cycle)} of an extendible component is not extendible"
            )
        contraction, outside = extension
        base = frozenset(contraction.arc_origin[a] for a in outside.selection_order) | set(cycle)
        e, f = arc_id, back[-1]
        pairs.append(
            AdjacentPair(
                first=Arborescence.from_arcs(digraph, p, base - {f}),
                second=Arborescence.from_arcs(digraph, q, base - {e}),
                cycle=cycle,
            )
        )
    return pairs


def realize_adjacency(
    digraph: TemporalDigraph,
    witness: AdjacencyWitness,
    source: int,
    target: int,
) -> list[AdjacentPair]:
    """Concrete root changes from ``source`` to ``target`` for one root-graph edge."""
    if witness.kind is WitnessKind.COND_III_PRIME:
        assert witness.label is not None
        return expand_component_edge(digraph, witness.label, witness.component, source, target)
    assert witness.first is not None and witness.second is not None
    if source == witness.r1:
        return [AdjacentPair(witness.first, witness.second)]
    return [AdjacentPair(witness.second, witness.first)]


def construct_sequence(
    digraph: TemporalDigraph,
    tree1: Arborescence,
    tree2: Arborescence,
    *,
    root_graph: RootAdjacencyGraph | None = None,
) -> ReconfSequence | None:
    """Build a verified reconfiguration sequence, or None if ``tree2`` is unreachable.

    Equal roots delegate to same-root reconfiguration (shortest). Otherwise a
    shortest root path is realized edge by edge and the root changes are
    stitched with same-root reconfiguration; no length guarantee is made.

    Raises:
        InvalidArborescenceError: If either input is invalid.
        InvariantViolation: If an assembled intermediate fails validation.
    """
    require_time_respecting(digraph, tree1)
    require_time_respecting(digraph, tree2)
    if tree1.root == tree2.root:
        return reconfigure_same_root(digraph, tree1, tree2)

    if root_graph is None:
        root_graph = build_root_adjacency_graph(digraph)
    path = root_graph.shortest_root_path(tree1.root, tree2.root)
    if path is None:
        logger.info("Roots %d and %d are not connected in the root graph", tree1.root, tree2.root)
        return None

    sequence = ReconfSequence(start=tree1)
    current = tree1
    for source, target in itertools.pairwise(path):
        witness = root_graph.witness(source, target)
        if witness is None:
            raise InvariantViolation(f"root path uses a missing edge {source}-{target}")
        for pair in realize_adjacency(digraph, witness, source, target):
            sequence = sequence.then(reconfigure_same_root(digraph, current, pair.first).steps)
            sequence = sequence.then([pair.step])
            current = pair.second
    sequence = sequence.then(reconfigure_same_root(digraph, current, tree2).steps)

    if not verify_sequence(digraph, sequence, tree2):
        raise InvariantViolation("assembled sequence failed verification")
    logger.info(
        "Built sequence of length %d across %d root change(s)",
        sequence.length,
        len(path) - 1,
    )
    return sequence
