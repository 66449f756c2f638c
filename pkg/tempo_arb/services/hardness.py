"""Vertex Cover reduction to shortest time-respecting arborescence reconfiguration.

For a graph G = (V, E) and budget k the generated digraph has vertices
r1, r2, one w_v per graph vertex and one w_e per edge, and arc classes

- A1: (r1, w_e) and (r2, w_e) for every edge e,
- A2: (r1, r2) and (r2, r1),
- A3: a_v = (r2, w_v) for every vertex v,
- A4: (w_v, w_e) for every edge e and endpoint v,
- A5: a'_v = (r2, w_v), parallel to a_v.

G has a vertex cover of size <= k iff T1 reaches T2 within
ell = 2|E| + 2k + 1 swaps.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from tempo_arb.config import get_settings
from tempo_arb.digraph import (
    Arborescence,
    TemporalDigraph,
    arborescence_diagnostics,
)
from tempo_arb.errors import (
    BudgetExceededError,
    InvalidSequenceError,
    InvariantViolation,
    NotAVertexCoverError,
)
from tempo_arb.services.fixed_root import ReconfSequence, ReconfStep, verify_sequence

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class LabelVariant(StrEnum):
    """Label assignments for the generated arcs."""

    STANDARD = "standard"
    THREE_LABEL = "three-label"
    PERTURBED = "perturbed"


_THREE_LABEL = {1: 1, 2: 2, 3: 2, 4: 2, 5: 3}


class VertexCoverInstance(BaseModel):
    """Undirected simple graph on vertices 0..n-1 with a cover budget k."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    edges: tuple[Edge, ...] = ()
    k: int = Field(ge=0)

    @field_validator("edges")
    @classmethod
    def _normalize_edges(cls, edges: tuple[Edge, ...]) -> tuple[Edge, ...]:
        return tuple((min(u, v), max(u, v)) for u, v in edges)

    @model_validator(mode="after")
    def _check_simple(self) -> VertexCoverInstance:
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds the vertex count {self.n}")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("parallel edges are not allowed")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}-{v} has an endpoint out of range")
        return self

    def is_cover(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return all(u in chosen or v in chosen for u, v in self.edges)


@dataclass(frozen=True, slots=True)
class HardnessRoles:
    """Which digraph vertex and arc plays which part in the construction."""

    r1: int
    r2: int
    vertex_nodes: tuple[int, ...]
    edge_nodes: tuple[int, ...]
    arc_class: tuple[int, ...]
    r1_edge_arcs: tuple[int, ...]
    r2_edge_arcs: tuple[int, ...]
    r1_r2_arc: int
    r2_r1_arc: int
    a_arcs: tuple[int, ...]
    a_prime_arcs: tuple[int, ...]
    cover_arcs: tuple[Mapping[int, int], ...]


@dataclass(frozen=True, eq=False)
class HardnessInstance:
    """Generated reconfiguration instance with its threshold ``ell``."""

    source: VertexCoverInstance
    variant: LabelVariant
    digraph: TemporalDigraph
    tree1: Arborescence
    tree2: Arborescence
    ell: int
    roles: HardnessRoles


def _labels(arc_class: list[int], variant: LabelVariant) -> list[Fraction]:
    if variant is LabelVariant.THREE_LABEL:
        return [Fraction(_THREE_LABEL[c]) for c in arc_class]
    if variant is LabelVariant.PERTURBED:
        # Offsets stay below 1/2, so every cross-class comparison survives.
        unit = Fraction(1, 2 * len(arc_class) + 2)
        return [c + (i + 1) * unit for i, c in enumerate(arc_class)]
    return [Fraction(c) for c in arc_class]


def reduce_vertex_cover(
    vc: VertexCoverInstance,
    variant: LabelVariant = LabelVariant.STANDARD,
) -> HardnessInstance:
    """Build the reconfiguration instance for a Vertex Cover instance.

    Vertices are numbered r1 = 0, r2 = 1, w_v = 2 + v, w_e = 2 + n + j.
    Arcs are emitted class by class (A1 to A5), so arc ids are stable.

    Args:
        vc: Vertex Cover instance.
        variant: Label assignment.

    Returns:
        The digraph, T1, T2, ell = 2|E| + 2k + 1 and the role bookkeeping.
    """
    r1, r2 = 0, 1
    vertex_nodes = tuple(2 + v for v in range(vc.n))
    edge_nodes = tuple(2 + vc.n + j for j in range(len(vc.edges)))
    specs: list[tuple[int, int]] = []
    arc_class: list[int] = []

    def add(tail: int, head: int, cls: int) -> int:
        specs.append((tail, head))
        arc_class.append(cls)
        return len(specs) - 1

    r1_edge_arcs: list[int] = []
    r2_edge_arcs: list[int] = []
    for w_e in edge_nodes:
        r1_edge_arcs.append(add(r1, w_e, 1))
        r2_edge_arcs.append(add(r2, w_e, 1))
    r1_r2_arc = add(r1, r2, 2)
    r2_r1_arc = add(r2, r1, 2)
    a_arcs = tuple(add(r2, w_v, 3) for w_v in vertex_nodes)
    cover_arcs = tuple(
        {u: add(vertex_nodes[u], w_e, 4), v: add(vertex_nodes[v], w_e, 4)}
        for (u, v), w_e in zip(vc.edges, edge_nodes, strict=True)
    )
    a_prime_arcs = tuple(add(r2, w_v, 5) for w_v in vertex_nodes)

    labels = _labels(arc_class, variant)
    digraph = TemporalDigraph(
        2 + vc.n + len(vc.edges),
        ((tail, head, label) for (tail, head), label in zip(specs, labels, strict=True)),
    )
    tree1 = Arborescence.from_arcs(digraph, r1, [r1_r2_arc, *r1_edge_arcs, *a_prime_arcs])
    tree2 = Arborescence.from_arcs(digraph, r2, [r2_r1_arc, *r2_edge_arcs, *a_prime_arcs])
    for tree in (tree1, tree2):
        diagnostics = arborescence_diagnostics(digraph, tree)
        if diagnostics:
            raise InvariantViolation(f"generated arborescence is invalid: {diagnostics}")

    roles = HardnessRoles(
        r1=r1,
        r2=r2,
        vertex_nodes=vertex_nodes,
        edge_nodes=edge_nodes,
        arc_class=tuple(arc_class),
        r1_edge_arcs=tuple(r1_edge_arcs),
        r2_edge_arcs=tuple(r2_edge_arcs),
        r1_r2_arc=r1_r2_arc,
        r2_r1_arc=r2_r1_arc,
        a_arcs=a_arcs,
        a_prime_arcs=a_prime_arcs,
        cover_arcs=cover_arcs,
    )
    ell = 2 * len(vc.edges) + 2 * vc.k + 1
    logger.info(
        "Reduced Vertex Cover (n=%d, |E|=%d, k=%d, %s) to %d vertices, %d arcs, ell=%d",
        vc.n,
        len(vc.edges),
        vc.k,
        variant,
        digraph.n,
        digraph.m,
        ell,
    )
    return HardnessInstance(
        source=vc,
        variant=variant,
        digraph=digraph,
        tree1=tree1,
        tree2=tree2,
        ell=ell,
        roles=roles,
    )


def _default_sigma(edges: Iterable[Edge], cover: frozenset[int]) -> dict[Edge, int]:
    """Assign each edge to its smallest endpoint inside the cover."""
    sigma: dict[Edge, int] = {}
    for edge in edges:
        inside = [v for v in edge if v in cover]
        if not inside:
            raise NotAVertexCoverError(edge)
        sigma[edge] = min(inside)
    return sigma


def build_cover_sequence(
    instance: HardnessInstance,
    cover: Iterable[int],
    sigma: Mapping[Edge, int] | None = None,
) -> ReconfSequence:
    """Sequence of length 2(|X| + |E|) + 1 from T1 to T2 through a cover X.

    Swaps a'_v for a_v on the cover, hangs every w_e below w_sigma(e), flips
    (r1, r2) to (r2, r1), then undoes the first two phases on the r2 side.

    Raises:
        NotAVertexCoverError: If ``cover`` misses an edge.
        ValueError: If ``sigma`` maps an edge outside ``cover`` or the edge.
    """
    chosen = frozenset(cover)
    edges = instance.source.edges
    default = _default_sigma(edges, chosen)
    if sigma is None:
        sigma = default
    for edge in edges:
        if sigma.get(edge) not in chosen or sigma[edge] not in edge:
            raise ValueError(f"sigma must map edge {edge} to one of its endpoints in the cover")

    roles = instance.roles
    steps: list[ReconfStep] = [
        ReconfStep(remove=roles.a_prime_arcs[v], add=roles.a_arcs[v]) for v in sorted(chosen)
    ]
    hang = [roles.cover_arcs[j][sigma[edge]] for j, edge in enumerate(edges)]
    steps += [
        ReconfStep(remove=roles.r1_edge_arcs[j], add=arc_id) for j, arc_id in enumerate(hang)
    ]
    steps.append(ReconfStep(remove=roles.r1_r2_arc, add=roles.r2_r1_arc))
    steps += [
        ReconfStep(remove=hang[j], add=roles.r2_edge_arcs[j]) for j in reversed(range(len(edges)))
    ]
    steps += [
        ReconfStep(remove=roles.a_arcs[v], add=roles.a_prime_arcs[v])
        for v in sorted(chosen, reverse=True)
    ]

    sequence = ReconfSequence(start=instance.tree1, steps=tuple(steps))
    if not verify_sequence(instance.digraph, sequence, instance.tree2):
        raise InvariantViolation("cover sequence failed verification")
    return sequence


def extract_vertex_cover(instance: HardnessInstance, sequence: ReconfSequence) -> frozenset[int]:
    """Read a vertex cover off the first root-changing step of a valid sequence.

    With F the arborescence just before the root moves, minus (r1, r2), the
    cover is every v with a_v in F. Its size is at most k whenever the
    sequence has length at most ell.

    Raises:
        InvalidSequenceError: If ``sequence`` is not a valid T1 -> T2 sequence.
        InvariantViolation: If the root change does not have the expected shape.
    """
    digraph = instance.digraph
    roles = instance.roles
    if sequence.start != instance.tree1 or not verify_sequence(digraph, sequence, instance.tree2):
        raise InvalidSequenceError("not a valid sequence from T1 to T2 of this instance")

    for before, after in itertools.pairwise(sequence.trees(digraph)):
        if before.root == after.root:
            continue
        if before.arc_ids - after.arc_ids != {roles.r1_r2_arc} or (
            after.arc_ids - before.arc_ids != {roles.r2_r1_arc}
        ):
            raise InvariantViolation("root change is not the swap (r1, r2) -> (r2, r1)")
        rest = before.arc_ids - {roles.r1_r2_arc}
        if rest & (set(roles.r1_edge_arcs) | set(roles.r2_edge_arcs)):
            raise InvariantViolation("arborescence at the root change still uses an A1 arc")
        cover = frozenset(v for v, arc_id in enumerate(roles.a_arcs) if arc_id in rest)
        if not instance.source.is_cover(cover):
            raise InvariantViolation(f"extracted set {sorted(cover)} is not a vertex cover")
        return cover
    raise InvariantViolation("sequence from T1 to T2 never changes the root")


def minimum_vertex_cover(vc: VertexCoverInstance, *, budget: int | None = None) -> frozenset[int]:
    """Smallest vertex cover by exhaustive search over subsets of increasing size.

    Raises:
        BudgetExceededError: If the graph has more vertices than the budget.
    """
    if budget is None:
        budget = get_settings().hardness.vertex_cover_budget
    if vc.n > budget:
        raise BudgetExceededError(vc.n, budget)
    for size in range(vc.n + 1):
        for candidate in itertools.combinations(range(vc.n), size):
            if vc.is_cover(candidate):
                return frozenset(candidate)
    raise InvariantViolation("the full vertex set must be a cover")


def vc_brute_force(vc: VertexCoverInstance, *, budget: int | None = None) -> bool:
    """True iff some set of at most k vertices covers every edge."""
    return len(minimum_vertex_cover(vc, budget=budget)) <= vc.k
