"""Shared test fixtures.

Provides the seeded corpus of small random temporal digraphs used by the
oracle agreement suites, and clears the cached settings around every test
so environment overrides never leak between tests.
"""

import random
from collections.abc import Iterator

import pytest

from tempo_arb.config import get_settings
from tempo_arb.digraph import Arborescence, TemporalDigraph
from tempo_arb.services.oracle import ReconfigurationGraph, build_reconfiguration_graph
from tempo_arb.services.search import random_temporal_digraph

CORPUS_SEED = 20240611
CORPUS_SIZE = 500
CORPUS_MAX_VERTICES = 7
CORPUS_MAX_ARCS = 18
CORPUS_MAX_LABEL = 4


@pytest.fixture(autouse=True)
def reset_settings_cache() -> Iterator[None]:
    """Drop the settings singleton before and after each test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _make_corpus() -> list[TemporalDigraph]:
    rng = random.Random(CORPUS_SEED)
    digraphs: list[TemporalDigraph] = []
    for _ in range(CORPUS_SIZE):
        n = rng.randint(1, CORPUS_MAX_VERTICES)
        m = rng.randint(0, CORPUS_MAX_ARCS) if n > 1 else 0
        digraphs.append(random_temporal_digraph(rng, n, m, CORPUS_MAX_LABEL))
    return digraphs


@pytest.fixture(scope="session")
def corpus() -> list[TemporalDigraph]:
    """500 random temporal digraphs: n <= 7, m <= 18, labels uniform in 1..4."""
    return _make_corpus()


@pytest.fixture(scope="session")
def corpus_graphs(
    corpus: list[TemporalDigraph],
) -> list[tuple[TemporalDigraph, ReconfigurationGraph]]:
    """Each corpus digraph with its full reconfiguration graph."""
    return [(digraph, build_reconfiguration_graph(digraph)) for digraph in corpus]


def make_no_instance() -> tuple[TemporalDigraph, Arborescence, Arborescence]:
    """Smallest pinned pair with distinct roots and no sequence between them.

    Each root admits exactly one time-respecting arborescence and the two
    differ in two arcs, so no single swap connects them.
    """
    digraph = TemporalDigraph(3, [(0, 1, 2), (1, 0, 2), (0, 2, 1), (1, 2, 1)])
    tree1 = Arborescence.from_arcs(digraph, 0, [0, 2])
    tree2 = Arborescence.from_arcs(digraph, 1, [1, 3])
    return digraph, tree1, tree2
