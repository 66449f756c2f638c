"""Temporal digraph model, arborescences and structural queries.

Vertices are dense integer ids ``0..n-1``. Arcs carry exact rational labels
(``fractions.Fraction``) and are identified by their dense id, never by their
endpoints, so parallel arcs are distinct reconfiguration moves.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType

import networkx as nx

from tempo_arb.errors import InvalidArborescenceError

logger = logging.getLogger(__name__)

Label = Fraction

ZERO = Fraction(0)


def to_label(value: int | str | Fraction) -> Fraction:
    """Convert a number or ``p/q`` / decimal string into an exact label.

    Args:
        value: Integer, Fraction, or string such as ``"2.5"`` or ``"5/2"``.

    Returns:
        The label as a Fraction.

    Raises:
        ValueError: If the value is malformed or negative.
    """
    label = Fraction(value)
    if label < 0:
        raise ValueError(f"label {value!r} is negative")
    return label


@dataclass(frozen=True, slots=True)
class Arc:
    """Labelled arc ``tail -> head`` with a stable id."""

    id: int
    tail: int
    head: int
    label: Fraction


class TemporalDigraph:
    """Immutable multigraph with exact nonnegative arc labels.

    Parallel arcs are allowed; self-loops are rejected because no
    arborescence can use them.
    """

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int, int | str | Fraction]],
        names: Sequence[str | None] | None = None,
    ) -> None:
        if n < 1:
            raise ValueError("a digraph needs at least one vertex")
        in_index: list[list[int]] = [[] for _ in range(n)]
        out_index: list[list[int]] = [[] for _ in range(n)]
        built: list[Arc] = []
        for arc_id, (tail, head, label) in enumerate(arcs):
            if not (0 <= tail < n and 0 <= head < n):
                raise ValueError(f"arc {arc_id} ({tail}, {head}) has an endpoint out of range")
            if tail == head:
                raise ValueError(f"arc {arc_id} is a self-loop at vertex {tail}")
            built.append(Arc(arc_id, tail, head, to_label(label)))
            in_index[head].append(arc_id)
            out_index[tail].append(arc_id)

        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(built)
        self.in_index: tuple[tuple[int, ...], ...] = tuple(map(tuple, in_index))
        self.out_index: tuple[tuple[int, ...], ...] = tuple(map(tuple, out_index))
        if names is not None and len(names) != n:
            raise ValueError("names must have one entry per vertex")
        self.names: tuple[str | None, ...] = tuple(names) if names else (None,) * n

    def __repr__(self) -> str:
        return f"TemporalDigraph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        """Number of arcs."""
        return len(self.arcs)

    def in_arcs(self, v: int) -> tuple[Arc, ...]:
        """Arcs entering ``v``, in arc-id order."""
        return tuple(self.arcs[i] for i in self.in_index[v])

    def out_arcs(self, v: int) -> tuple[Arc, ...]:
        """Arcs leaving ``v``, in arc-id order."""
        return tuple(self.arcs[i] for i in self.out_index[v])

    def vertex_name(self, v: int) -> str:
        """Display name of ``v``, falling back to its index."""
        return self.names[v] or str(v)

    @cached_property
    def distinct_labels(self) -> tuple[Fraction, ...]:
        """Sorted distinct labels present on arcs."""
        return tuple(sorted({arc.label for arc in self.arcs}))

    @cached_property
    def label_ranks(self) -> tuple[int, ...]:
        """Rank of each arc's label among ``distinct_labels``.

        Ranks preserve exact order and equality, so hot loops compare ints
        instead of Fractions.
        """
        position = {label: i for i, label in enumerate(self.distinct_labels)}
        return tuple(position[arc.label] for arc in self.arcs)

    def subgraph(self, arc_ids: Iterable[int]) -> Subgraph:
        """Spanning subgraph on the given arcs, renumbered densely in id order."""
        chosen = sorted(set(arc_ids))
        digraph = TemporalDigraph(
            self.n,
            ((self.arcs[i].tail, self.arcs[i].head, self.arcs[i].label) for i in chosen),
            names=self.names,
        )
        return Subgraph(digraph=digraph, arc_origin=tuple(chosen))

    def to_networkx(self) -> nx.MultiDiGraph:
        """Export as a networkx multigraph keyed by arc id."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.n))
        for arc in self.arcs:
            graph.add_edge(arc.tail, arc.head, key=arc.id, label=arc.label)
        return graph


@dataclass(frozen=True, slots=True)
class Subgraph:
    """A derived digraph plus the original id of each of its arcs."""

    digraph: TemporalDigraph
    arc_origin: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class ContractionResult:
    """Quotient of a digraph after merging a vertex set into ``contracted_vertex``."""

    quotient: TemporalDigraph
    contracted_vertex: int
    arc_origin: tuple[int, ...]
    vertex_map: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Arborescence:
    """A root plus the id of the unique in-arc of every other vertex."""

    root: int
    in_arc: Mapping[int, int]

    def __post_init__(self) -> None:
        if self.root in self.in_arc:
            raise InvalidArborescenceError([f"root {self.root} has an incoming arc"])
        object.__setattr__(self, "in_arc", MappingProxyType(dict(sorted(self.in_arc.items()))))

    @classmethod
    def from_arcs(cls, digraph: TemporalDigraph, root: int, arc_ids: Iterable[int]) -> Arborescence:
        """Build from an arc-id set, checking in-degrees but not reachability.

        Raises:
            InvalidArborescenceError: On unknown arcs, an arc into the root,
                or a vertex with two incoming arcs.
        """
        if not 0 <= root < digraph.n:
            raise InvalidArborescenceError([f"root {root} is not a vertex"])
        in_arc: dict[int, int] = {}
        for arc_id in arc_ids:
            if not 0 <= arc_id < digraph.m:
                raise InvalidArborescenceError([f"arc {arc_id} does not exist"])
            head = digraph.arcs[arc_id].head
            if head == root:
                raise InvalidArborescenceError([f"arc {arc_id} enters the root {root}"])
            if head in in_arc:
                raise InvalidArborescenceError(
                    [f"vertex {head} has two incoming arcs ({in_arc[head]}, {arc_id})"]
                )
            in_arc[head] = arc_id
        return cls(root, in_arc)

    @cached_property
    def arc_ids(self) -> frozenset[int]:
        return frozenset(self.in_arc.values())

    @cached_property
    def key(self) -> tuple[int, ...]:
        """Canonical identity: the sorted arc-id vector."""
        return tuple(sorted(self.in_arc.values()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arborescence):
            return NotImplemented
        return self.root == other.root and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.root, self.key))

    def __repr__(self) -> str:
        return f"Arborescence(root={self.root}, arcs={list(self.key)})"


# --- Structural queries ---


def delta_out(digraph: TemporalDigraph, vertices: Iterable[int]) -> frozenset[int]:
    """Arcs with tail inside ``vertices`` and head outside."""
    members = frozenset(vertices)
    return frozenset(
        arc_id
        for v in members
        for arc_id in digraph.out_index[v]
        if digraph.arcs[arc_id].head not in members
    )


def delta_in(digraph: TemporalDigraph, vertices: Iterable[int]) -> frozenset[int]:
    """Arcs with head inside ``vertices`` and tail outside."""
    members = frozenset(vertices)
    return frozenset(
        arc_id
        for v in members
        for arc_id in digraph.in_index[v]
        if digraph.arcs[arc_id].tail not in members
    )


def is_arborescence(digraph: TemporalDigraph, arc_ids: Iterable[int], root: int) -> bool:
    """Check that ``arc_ids`` form a spanning arborescence rooted at ``root``.

    Args:
        digraph: Host digraph.
        arc_ids: Candidate arc set.
        root: Candidate root.

    Returns:
        True iff there are n-1 distinct arcs, the root has in-degree 0, every
        other vertex in-degree 1, and every vertex is reachable from the root.
    """
    ids = list(arc_ids)
    n = digraph.n
    if not 0 <= root < n or len(ids) != n - 1 or len(set(ids)) != len(ids):
        return False
    indegree = [0] * n
    children: list[list[int]] = [[] for _ in range(n)]
    for arc_id in ids:
        if not 0 <= arc_id < digraph.m:
            return False
        arc = digraph.arcs[arc_id]
        indegree[arc.head] += 1
        children[arc.tail].append(arc.head)
    if indegree[root] != 0 or any(indegree[v] != 1 for v in range(n) if v != root):
        return False

    seen = {root}
    queue = deque([root])
    while queue:
        for child in children[queue.popleft()]:
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return len(seen) == n


def time_respecting_violations(
    digraph: TemporalDigraph, tree: Arborescence
) -> list[tuple[int, int]]:
    """List ``(parent_arc, child_arc)`` pairs whose labels decrease."""
    violations: list[tuple[int, int]] = []
    for arc_id in tree.key:
        arc = digraph.arcs[arc_id]
        parent = tree.in_arc.get(arc.tail)
        if parent is not None and digraph.arcs[parent].label > arc.label:
            violations.append((parent, arc_id))
    return violations


def is_time_respecting(digraph: TemporalDigraph, tree: Arborescence) -> bool:
    """Local check: every in-arc label is <= the labels of the arcs leaving its head."""
    arcs = digraph.arcs
    in_arc = tree.in_arc
    for arc_id in in_arc.values():
        arc = arcs[arc_id]
        parent = in_arc.get(arc.tail)
        if parent is not None and arcs[parent].label > arc.label:
            return False
    return True


def arborescence_diagnostics(digraph: TemporalDigraph, tree: Arborescence) -> list[str]:
    """Human-readable reasons why ``tree`` is not a time-respecting arborescence."""
    if not is_arborescence(digraph, tree.key, tree.root):
        return [f"arcs {list(tree.key)} do not form an arborescence rooted at {tree.root}"]
    return [
        f"arc {parent} (label {digraph.arcs[parent].label}) precedes "
        f"arc {child} (label {digraph.arcs[child].label})"
        for parent, child in time_respecting_violations(digraph, tree)
    ]


def require_time_respecting(digraph: TemporalDigraph, tree: Arborescence) -> None:
    """Raise InvalidArborescenceError unless ``tree`` is a time-respecting arborescence."""
    diagnostics = arborescence_diagnostics(digraph, tree)
    if diagnostics:
        raise InvalidArborescenceError(diagnostics)


def arborescence_from_arcs(digraph: TemporalDigraph, arc_ids: Iterable[int]) -> Arborescence | None:
    """Infer the root of an arc set; None unless it is an arborescence."""
    ids = frozenset(arc_ids)
    if len(ids) != digraph.n - 1 or any(not 0 <= i < digraph.m for i in ids):
        return None
    heads = {digraph.arcs[i].head for i in ids}
    roots = [v for v in range(digraph.n) if v not in heads]
    if len(roots) != 1 or not is_arborescence(digraph, ids, roots[0]):
        return None
    return Arborescence.from_arcs(digraph, roots[0], ids)


def contract(digraph: TemporalDigraph, vertices: Iterable[int]) -> ContractionResult:
    """Merge ``vertices`` into one vertex, dropping arcs internal to the set.

    Surviving vertices keep their relative order; the merged vertex takes the
    position of the smallest member, so contracting a singleton is the
    identity.

    Raises:
        ValueError: If ``vertices`` is empty.
    """
    members = frozenset(vertices)
    if not members:
        raise ValueError("cannot contract an empty vertex set")
    representative = min(members)
    kept = [v for v in range(digraph.n) if v not in members or v == representative]
    position = {v: i for i, v in enumerate(kept)}
    vertex_map = tuple(
        position[representative] if v in members else position[v] for v in range(digraph.n)
    )

    quotient_arcs: list[tuple[int, int, Fraction]] = []
    origin: list[int] = []
    for arc in digraph.arcs:
        if arc.tail in members and arc.head in members:
            continue
        quotient_arcs.append((vertex_map[arc.tail], vertex_map[arc.head], arc.label))
        origin.append(arc.id)

    names = [digraph.names[v] for v in kept]
    quotient = TemporalDigraph(len(kept), quotient_arcs, names=names)
    return ContractionResult(
        quotient=quotient,
        contracted_vertex=position[representative],
        arc_origin=tuple(origin),
        vertex_map=vertex_map,
    )


def scc_decompose(digraph: TemporalDigraph) -> list[frozenset[int]]:
    """Strongly connected components ordered by their smallest vertex."""
    components = nx.strongly_connected_components(digraph.to_networkx())
    return sorted((frozenset(c) for c in components), key=min)


def restrict_to_label(digraph: TemporalDigraph, label: Fraction) -> Subgraph:
    """Spanning subgraph ``D_t`` of the arcs whose label equals ``label`` exactly."""
    return digraph.subgraph(arc.id for arc in digraph.arcs if arc.label == label)


def root_paths(digraph: TemporalDigraph, tree: Arborescence) -> Iterator[list[int]]:
    """Yield the arc sequence of every root-to-leaf path of ``tree``."""
    children: dict[int, list[int]] = {}
    for arc_id in tree.key:
        children.setdefault(digraph.arcs[arc_id].tail, []).append(arc_id)

    stack: list[tuple[int, list[int]]] = [(tree.root, [])]
    while stack:
        vertex, path = stack.pop()
        below = children.get(vertex, [])
        if not below:
            yield path
        for arc_id in below:
            stack.append((digraph.arcs[arc_id].head, [*path, arc_id]))
