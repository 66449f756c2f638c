"""Free-root reachability tests."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from tempo_arb.digraph import Arborescence, TemporalDigraph, is_time_respecting
from tempo_arb.errors import InvalidArborescenceError
from tempo_arb.services.fixed_root import verify_sequence
from tempo_arb.services.free_root import (
    LabelComponentIndex,
    WitnessKind,
    build_root_adjacency_graph,
    check_cond_i,
    check_cond_ii,
    check_cond_iii_prime,
    construct_sequence,
    expand_component_edge,
    reachable,
    revalidate_witness,
)
from tempo_arb.services.minimal import minimal_arborescence
from tempo_arb.services.oracle import ReconfigurationGraph, bfs_shortest
from tempo_arb.services.search import random_temporal_digraph
from tests.conftest import make_no_instance

MAX_PAIRS_PER_DIGRAPH = 200
MAX_SEQUENCES_PER_DIGRAPH = 10


# --- Helpers ---


def _make_two_cycle(label: int = 1) -> TemporalDigraph:
    return TemporalDigraph(2, [(0, 1, label), (1, 0, label)])


def _make_four_cycle() -> TemporalDigraph:
    """Directed cycle 0 -> 1 -> 2 -> 3 -> 0, every arc labelled 2."""
    return TemporalDigraph(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)])


def _make_stranded_cycle() -> TemporalDigraph:
    """Label-2 two-cycle on {0, 1}; vertex 2 is only reachable through a label-1 arc."""
    return TemporalDigraph(3, [(0, 1, 2), (1, 0, 2), (1, 2, 1)])


def _component_of(graph: ReconfigurationGraph) -> dict[int, int]:
    component_of: dict[int, int] = {}
    for label, component in enumerate(graph.components()):
        component_of.update(dict.fromkeys(component, label))
    return component_of


def _cycle_labels(digraph: TemporalDigraph, tree: Arborescence, f: int) -> list[Fraction]:
    """Labels of the cycle closed in ``tree`` by the arc ``f`` entering its root."""
    labels = [digraph.arcs[f].label]
    vertex = digraph.arcs[f].tail
    while vertex != tree.root:
        arc_id = tree.in_arc[vertex]
        labels.append(digraph.arcs[arc_id].label)
        vertex = digraph.arcs[arc_id].tail
    return labels


# --- Condition checks ---


def test_cond_i_requires_reverse_arc() -> None:
    digraph = TemporalDigraph(2, [(0, 1, 1)])
    assert check_cond_i(digraph, 0, 1) is None


def test_cond_i_two_cycle() -> None:
    """Verify that the equal-label 2-cycle satisfies cond-i with an empty constraint set."""
    digraph = _make_two_cycle()

    witness = check_cond_i(digraph, 0, 1)

    assert witness is not None
    assert witness.kind is WitnessKind.COND_I
    assert witness.arc == 1
    assert witness.first == Arborescence.from_arcs(digraph, 0, [0])
    assert witness.second == Arborescence.from_arcs(digraph, 1, [1])
    assert revalidate_witness(digraph, witness)


def test_cond_i_uses_smallest_parallel_arc() -> None:
    """Verify that among parallel (r2, r1) arcs the smallest label is tried."""
    digraph = TemporalDigraph(3, [(1, 0, 5), (1, 0, 1), (0, 1, 1), (0, 2, 1)])

    witness = check_cond_i(digraph, 0, 1)

    assert witness is not None
    assert witness.arc == 1


def test_cond_i_blocked_by_early_out_arc() -> None:
    """Verify that a low arc out of r1 needed to reach a third vertex defeats cond-i."""
    digraph = TemporalDigraph(3, [(0, 1, 2), (1, 0, 2), (0, 2, 1)])
    assert check_cond_i(digraph, 0, 1) is None


def test_cond_ii_is_mirror_of_cond_i(corpus: list[TemporalDigraph]) -> None:
    """Verify that cond-ii(r1, r2) succeeds exactly when cond-i(r2, r1) does."""
    for digraph in corpus[:150]:
        for r1, r2 in itertools.permutations(range(digraph.n), 2):
            assert (check_cond_ii(digraph, r1, r2) is None) == (
                check_cond_i(digraph, r2, r1) is None
            )


def test_cond_ii_requires_forward_arc() -> None:
    digraph = TemporalDigraph(2, [(1, 0, 1)])
    assert check_cond_ii(digraph, 0, 1) is None


def test_cond_checks_reject_equal_roots() -> None:
    digraph = _make_two_cycle()
    with pytest.raises(ValueError):
        check_cond_i(digraph, 0, 0)
    with pytest.raises(ValueError):
        check_cond_iii_prime(digraph, 1, 1)


def test_cond_i_matches_oracle_swaps(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify that cond-i holds iff the oracle has a root change r1 -> r2 adding an arc (r2, r1)."""
    for digraph, graph in corpus_graphs:
        observed: set[tuple[int, int]] = set()
        for i, neighbours in enumerate(graph.adjacency):
            before = graph.nodes[i]
            for j in neighbours:
                after = graph.nodes[j]
                if before.root == after.root:
                    continue
                (added,) = after.arc_ids - before.arc_ids
                if digraph.arcs[added].tail == after.root:
                    observed.add((before.root, after.root))
        for r1, r2 in itertools.permutations(range(digraph.n), 2):
            assert (check_cond_i(digraph, r1, r2) is not None) == ((r1, r2) in observed)


def test_cond_iii_prime_two_cycle() -> None:
    """Verify that the equal-label 2-cycle gives t=1 and H={0, 1}."""
    witness = check_cond_iii_prime(_make_two_cycle(), 0, 1)

    assert witness is not None
    assert witness.label == Fraction(1)
    assert witness.component == frozenset({0, 1})


def test_cond_iii_prime_distinct_labels_never_hold() -> None:
    """Verify that with all labels distinct every label layer has singleton components."""
    digraph = TemporalDigraph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3), (1, 0, 4)])
    for r1, r2 in itertools.permutations(range(3), 2):
        assert check_cond_iii_prime(digraph, r1, r2) is None


def test_cond_iii_prime_not_extendible() -> None:
    """Verify that a label-2 component whose outside is reachable only by label 1 fails."""
    digraph = _make_stranded_cycle()

    assert check_cond_iii_prime(digraph, 0, 1) is None
    assert minimal_arborescence(digraph, 1) is not None


def test_planted_extendible_cycle_is_detected() -> None:
    """Verify that an extendible constant-label cycle through both roots yields cond-iii'."""
    digraph = TemporalDigraph(
        5, [(0, 1, 3), (1, 2, 3), (2, 0, 3), (2, 3, 4), (3, 4, 3), (0, 4, 5)]
    )
    witness = check_cond_iii_prime(digraph, 0, 2)

    assert witness is not None
    assert witness.label == Fraction(3)
    assert witness.component == frozenset({0, 1, 2})
    assert revalidate_witness(digraph, witness)


def test_label_component_index_memoizes() -> None:
    index = LabelComponentIndex(_make_four_cycle())

    assert index.shared_labels(0, 2) == [Fraction(2)]
    assert index.component(Fraction(2), 0) == frozenset({0, 1, 2, 3})
    assert index.is_extendible(Fraction(2), frozenset({0, 1, 2, 3}))


# --- Root adjacency graph ---


def test_root_graph_single_path() -> None:
    """Verify that a time-respecting path has its start as the only feasible root."""
    digraph = TemporalDigraph(3, [(0, 1, 1), (1, 2, 2)])

    root_graph = build_root_adjacency_graph(digraph)

    assert root_graph.feasible_roots == {0}
    assert root_graph.edges == {}


def test_root_graph_two_cycle_uses_cond_i() -> None:
    root_graph = build_root_adjacency_graph(_make_two_cycle())

    assert root_graph.feasible_roots == {0, 1}
    witness = root_graph.witness(0, 1)
    assert witness is not None
    assert witness.kind is WitnessKind.COND_I


def test_root_graph_four_cycle_has_cond_iii_prime_edge() -> None:
    """Verify that opposite corners of a constant-label 4-cycle join only through cond-iii'."""
    root_graph = build_root_adjacency_graph(_make_four_cycle())

    witness = root_graph.witness(0, 2)
    assert witness is not None
    assert witness.kind is WitnessKind.COND_III_PRIME
    assert root_graph.components() == [frozenset({0, 1, 2, 3})]


def test_root_graph_witnesses_revalidate(corpus: list[TemporalDigraph]) -> None:
    for digraph in corpus[:200]:
        root_graph = build_root_adjacency_graph(digraph)
        for witness in root_graph.edges.values():
            assert revalidate_witness(digraph, witness)


def test_root_graph_matches_oracle_projection(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify that root graph components equal oracle components projected onto roots."""
    for digraph, graph in corpus_graphs:
        root_graph = build_root_adjacency_graph(digraph)
        projected = sorted(
            (frozenset(graph.nodes[i].root for i in component) for component in graph.components()),
            key=min,
        )
        assert root_graph.components() == projected


# --- reachable / construct_sequence ---


def test_reachable_same_root() -> None:
    digraph = TemporalDigraph(2, [(0, 1, 1), (0, 1, 2)])
    tree1 = Arborescence.from_arcs(digraph, 0, [0])
    tree2 = Arborescence.from_arcs(digraph, 0, [1])

    assert reachable(digraph, tree1, tree2)


def test_no_instance_is_unreachable() -> None:
    """Verify that the pinned no-instance is rejected by reachable and construct_sequence."""
    digraph, tree1, tree2 = make_no_instance()

    assert not reachable(digraph, tree1, tree2)
    assert construct_sequence(digraph, tree1, tree2) is None
    assert bfs_shortest(digraph, tree1, tree2) is None


def test_reachable_rejects_invalid_input() -> None:
    digraph = TemporalDigraph(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)])
    bad = Arborescence.from_arcs(digraph, 0, [0, 1])
    good = Arborescence.from_arcs(digraph, 0, [0, 2])

    with pytest.raises(InvalidArborescenceError):
        reachable(digraph, bad, good)


def test_construct_two_cycle_single_swap() -> None:
    digraph = _make_two_cycle()
    tree1 = Arborescence.from_arcs(digraph, 0, [0])
    tree2 = Arborescence.from_arcs(digraph, 1, [1])

    sequence = construct_sequence(digraph, tree1, tree2)

    assert sequence is not None
    assert sequence.length == 1


def test_construct_through_cycle_expansion() -> None:
    """Verify that a cond-iii' edge expands into one-swap root changes along the cycle."""
    digraph = _make_four_cycle()
    tree1 = Arborescence.from_arcs(digraph, 0, [0, 1, 2])
    tree2 = Arborescence.from_arcs(digraph, 2, [2, 3, 0])

    sequence = construct_sequence(digraph, tree1, tree2)

    assert sequence is not None
    assert verify_sequence(digraph, sequence, tree2)
    assert [t.root for t in sequence.trees(digraph)] == [0, 1, 2]


def test_expand_component_edge_pairs_differ_on_cycle() -> None:
    """Verify that every expanded pair is one swap apart with both arcs on its cycle."""
    digraph = _make_four_cycle()

    pairs = expand_component_edge(digraph, Fraction(2), frozenset(range(4)), 0, 2)

    assert [(p.first.root, p.second.root) for p in pairs] == [(0, 1), (1, 2)]
    for pair in pairs:
        step = pair.step
        assert step.remove in pair.cycle
        assert step.add in pair.cycle
        assert is_time_respecting(digraph, pair.first)
        assert is_time_respecting(digraph, pair.second)


def test_reachability_matches_oracle(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify reachable() against oracle connectivity, and construct_sequence on reachable pairs."""
    mismatches = 0
    for digraph, graph in corpus_graphs:
        component_of = _component_of(graph)
        root_graph = build_root_adjacency_graph(digraph)
        pairs = list(itertools.combinations(range(len(graph.nodes)), 2))[:MAX_PAIRS_PER_DIGRAPH]
        built = 0
        for i, j in pairs:
            tree1, tree2 = graph.nodes[i], graph.nodes[j]
            expected = component_of[i] == component_of[j]
            if reachable(digraph, tree1, tree2, root_graph=root_graph) != expected:
                mismatches += 1
            if built < MAX_SEQUENCES_PER_DIGRAPH and tree1.root != tree2.root:
                built += 1
                sequence = construct_sequence(digraph, tree1, tree2, root_graph=root_graph)
                assert (sequence is not None) == expected
                if sequence is not None:
                    assert verify_sequence(digraph, sequence, tree2)
                    assert sequence.length >= graph.distances_from(i)[j]
    assert mismatches == 0


def test_root_classes_are_connected(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify that the oracle nodes sharing a root always form one connected class."""
    for _digraph, graph in corpus_graphs:
        component_of = _component_of(graph)
        for root in {tree.root for tree in graph.nodes}:
            assert len({component_of[i] for i in graph.root_class(root)}) == 1


def test_root_change_cycles_have_constant_labels(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify constant cycle labels for every root change not using an arc between the roots."""
    violations = 0
    for digraph, graph in corpus_graphs:
        for i, neighbours in enumerate(graph.adjacency):
            before = graph.nodes[i]
            for j in neighbours:
                after = graph.nodes[j]
                if before.root == after.root:
                    continue
                (removed,) = before.arc_ids - after.arc_ids
                (added,) = after.arc_ids - before.arc_ids
                if digraph.arcs[added].tail == after.root:
                    continue
                if digraph.arcs[removed].tail == before.root:
                    continue
                if len(set(_cycle_labels(digraph, before, added))) != 1:
                    violations += 1
    assert violations == 0


# --- Performance ---


def test_root_graph_and_reachable_at_scale() -> None:
    """Verify that a dense n=300, m=3000 instance is handled in under a minute.

    Three labels keep most roots feasible, so nearly every root pair is tested.
    """
    rng = random.Random(11)
    digraph = random_temporal_digraph(rng, 300, 3000, 3)

    started = time.perf_counter()
    root_graph = build_root_adjacency_graph(digraph)
    roots = sorted(root_graph.feasible_roots)
    assert len(roots) >= 2
    tree1 = minimal_arborescence(digraph, roots[0])
    tree2 = minimal_arborescence(digraph, roots[-1])
    assert tree1 is not None and tree2 is not None
    reachable(digraph, tree1.tree, tree2.tree, root_graph=root_graph)
    elapsed = time.perf_counter() - started

    assert elapsed < 60.0
    assert root_graph.graph.number_of_edges() > 0
