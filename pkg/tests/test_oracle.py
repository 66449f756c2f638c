"""Brute-force oracle tests."""

import itertools
import random
from fractions import Fraction

import pytest

from tempo_arb.config import get_settings
from tempo_arb.digraph import (
    Arborescence,
    TemporalDigraph,
    is_arborescence,
    is_time_respecting,
)
from tempo_arb.errors import BudgetExceededError
from tempo_arb.services.fixed_root import verify_sequence
from tempo_arb.services.oracle import (
    ReconfigurationGraph,
    bfs_shortest,
    build_reconfiguration_graph,
    enumerate_all,
    oracle_d,
    oracle_d_all,
)

COMPLETENESS_MAX_VERTICES = 5


# --- Helpers ---


def _enumerate_by_subsets(digraph: TemporalDigraph) -> set[tuple[int, tuple[int, ...]]]:
    """Independent enumeration: every (n-1)-subset of arcs, every root."""
    found: set[tuple[int, tuple[int, ...]]] = set()
    for subset in itertools.combinations(range(digraph.m), digraph.n - 1):
        for root in range(digraph.n):
            if not is_arborescence(digraph, subset, root):
                continue
            tree = Arborescence.from_arcs(digraph, root, subset)
            if is_time_respecting(digraph, tree):
                found.add((root, tree.key))
    return found


# --- enumerate_all ---


def test_single_vertex_has_one_arborescence() -> None:
    trees = enumerate_all(TemporalDigraph(1, []))
    assert trees == [Arborescence(0, {})]


def test_nondecreasing_path_has_one_arborescence() -> None:
    digraph = TemporalDigraph(3, [(0, 1, 1), (1, 2, 2)])
    assert [t.key for t in enumerate_all(digraph)] == [(0, 1)]


def test_two_cycle_has_one_per_root() -> None:
    trees = enumerate_all(TemporalDigraph(2, [(0, 1, 1), (1, 0, 1)]))
    assert sorted(t.root for t in trees) == [0, 1]


def test_enumeration_is_sound(corpus: list[TemporalDigraph]) -> None:
    """Verify that every enumerated arborescence passes both checks and appears once."""
    for digraph in corpus:
        trees = enumerate_all(digraph)
        assert len(set(trees)) == len(trees)
        for tree in trees:
            assert is_arborescence(digraph, tree.key, tree.root)
            assert is_time_respecting(digraph, tree)


def test_enumeration_is_complete(corpus: list[TemporalDigraph]) -> None:
    """Verify enumeration against the subset method for n <= 5."""
    for digraph in corpus:
        if digraph.n > COMPLETENESS_MAX_VERTICES:
            continue
        listed = {(t.root, t.key) for t in enumerate_all(digraph)}
        assert listed == _enumerate_by_subsets(digraph)


def test_enumeration_order_is_canonical(corpus: list[TemporalDigraph]) -> None:
    for digraph in corpus[:100]:
        trees = enumerate_all(digraph)
        assert [(t.key, t.root) for t in trees] == sorted((t.key, t.root) for t in trees)


def test_budget_refuses_with_root() -> None:
    """Verify that a choice space above the budget raises with the offending root."""
    digraph = TemporalDigraph(3, [(0, 1, 1), (2, 1, 1), (0, 2, 1), (1, 2, 1)])

    with pytest.raises(BudgetExceededError) as exc_info:
        enumerate_all(digraph, budget=1)

    assert exc_info.value.root == 0
    assert exc_info.value.size == 4


def test_budget_env_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Verify that TEMPO_ARB_BUDGET replaces the configured budget."""
    monkeypatch.setenv("TEMPO_ARB_BUDGET", "1")
    get_settings.cache_clear()
    digraph = TemporalDigraph(3, [(0, 1, 1), (2, 1, 1), (0, 2, 1), (1, 2, 1)])

    with pytest.raises(BudgetExceededError):
        enumerate_all(digraph)


# --- build_reconfiguration_graph ---


def test_graph_with_one_arborescence() -> None:
    graph = build_reconfiguration_graph(TemporalDigraph(2, [(0, 1, 1)]))

    assert len(graph.nodes) == 1
    assert graph.edge_count == 0


def test_two_cycle_graph_has_one_edge() -> None:
    graph = build_reconfiguration_graph(TemporalDigraph(2, [(0, 1, 1), (1, 0, 1)]))

    assert len(graph.nodes) == 2
    assert graph.edge_count == 1


def test_adjacency_means_one_arc_apart(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify that nodes are adjacent exactly when their arc sets differ by one arc each way."""
    for _digraph, graph in corpus_graphs[:150]:
        for i, j in itertools.combinations(range(len(graph.nodes)), 2):
            a, b = graph.nodes[i].arc_ids, graph.nodes[j].arc_ids
            one_swap = len(a - b) == 1 and len(b - a) == 1
            assert (j in graph.adjacency[i]) == one_swap


def test_to_dot_lists_nodes_and_edges() -> None:
    digraph = TemporalDigraph(2, [(0, 1, 1), (1, 0, 1)], names=["hub", None])
    graph = build_reconfiguration_graph(digraph)

    dot = graph.to_dot(digraph)

    assert dot.startswith("graph reconfiguration {")
    assert 'n0 [label="hub: 0"];' in dot
    assert 'n1 [label="1: 1"];' in dot
    assert "n0 -- n1;" in dot


# --- bfs_shortest ---


def test_bfs_same_tree_is_zero() -> None:
    digraph = TemporalDigraph(2, [(0, 1, 1)])
    tree = Arborescence.from_arcs(digraph, 0, [0])

    found = bfs_shortest(digraph, tree, tree)

    assert found is not None
    assert found[0] == 0


def test_bfs_rejects_unknown_tree() -> None:
    digraph = TemporalDigraph(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)])
    bad = Arborescence.from_arcs(digraph, 0, [0, 1])
    good = Arborescence.from_arcs(digraph, 0, [0, 2])

    with pytest.raises(ValueError):
        bfs_shortest(digraph, bad, good)


def test_bfs_sequences_verify(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    rng = random.Random(3)
    for digraph, graph in corpus_graphs[:200]:
        if len(graph.nodes) < 2:
            continue
        i, j = rng.sample(range(len(graph.nodes)), 2)
        found = bfs_shortest(digraph, graph.nodes[i], graph.nodes[j], graph=graph)
        if found is None:
            continue
        length, sequence = found
        assert sequence.length == length == graph.distances_from(i)[j]
        assert verify_sequence(digraph, sequence, graph.nodes[j])


def test_bfs_distance_symmetric_and_triangle(
    corpus_graphs: list[tuple[TemporalDigraph, ReconfigurationGraph]],
) -> None:
    """Verify symmetry and the triangle inequality over sampled node triples."""
    rng = random.Random(5)
    for _digraph, graph in corpus_graphs:
        size = len(graph.nodes)
        if size < 3:
            continue
        table = {i: graph.distances_from(i) for i in range(size)}
        for _ in range(10):
            a, b, c = rng.sample(range(size), 3)
            assert table[a][b] == table[b][a]
            ab, bc, ac = table[a][b], table[b][c], table[a][c]
            if ab is not None and bc is not None:
                assert ac is not None
                assert ac <= ab + bc


# --- oracle_d ---


def test_oracle_d_root_is_zero() -> None:
    assert oracle_d(TemporalDigraph(2, [(0, 1, 3)]), 0, 0) == 0


def test_oracle_d_single_arc() -> None:
    assert oracle_d(TemporalDigraph(2, [(0, 1, "7/2")]), 0, 1) == Fraction(7, 2)


def test_oracle_d_diamond() -> None:
    """Verify d(a)=2 and d(c)=2 on the diamond r->a(3), r->b(1), b->a(2), a->c(2)."""
    digraph = TemporalDigraph(4, [(0, 1, 3), (0, 2, 1), (2, 1, 2), (1, 3, 2)])

    assert oracle_d_all(digraph, 0) == {0: 0, 1: 2, 2: 1, 3: 2}


def test_oracle_d_undefined_without_path() -> None:
    digraph = TemporalDigraph(3, [(0, 1, 2), (1, 2, 1)])
    assert oracle_d(digraph, 0, 2) is None
