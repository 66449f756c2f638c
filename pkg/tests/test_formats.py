"""Text format tests."""

from fractions import Fraction

import pytest

from tempo_arb.digraph import Arborescence, TemporalDigraph
from tempo_arb.errors import FormatError, InvalidArborescenceError
from tempo_arb.formats import (
    format_arborescence,
    format_digraph,
    format_graph,
    format_sequence,
    parse_arborescence,
    parse_arborescence_record,
    parse_digraph,
    parse_graph,
    parse_sequence,
)
from tempo_arb.services.fixed_root import ReconfSequence, ReconfStep


# --- Helpers ---


def _make_digraph() -> TemporalDigraph:
    return TemporalDigraph(3, [(0, 1, "3/2"), (0, 1, 2), (1, 2, 2)])


# --- parse_digraph ---


def test_parse_digraph_rational_label() -> None:
    """Verify that 'n 2 / arc 0 1 3/2' yields one arc labelled 3/2."""
    digraph = parse_digraph("n 2\narc 0 1 3/2\n")

    assert digraph.n == 2
    assert digraph.m == 1
    assert digraph.arcs[0].label == Fraction(3, 2)


def test_parse_digraph_single_vertex() -> None:
    digraph = parse_digraph("n 1\n")

    assert digraph.n == 1
    assert digraph.m == 0


def test_parse_digraph_decimal_and_rational_are_equal() -> None:
    """Verify that labels 1/2 and 0.5 are the same exact label."""
    digraph = parse_digraph("n 3\narc 0 1 1/2\narc 1 2 0.5\n")
    assert digraph.arcs[0].label == digraph.arcs[1].label


def test_parse_digraph_skips_comments_and_blank_lines() -> None:
    text = "# header\n\nn 2\n  # indented comment\narc 1 0 4\n"
    digraph = parse_digraph(text)

    assert digraph.arcs[0].tail == 1
    assert digraph.arcs[0].head == 0


def test_parse_digraph_keeps_names() -> None:
    """Verify that 'name' records end up in the name table only."""
    digraph = parse_digraph("n 2\nname 0 depot north\narc 0 1 1\n")

    assert digraph.vertex_name(0) == "depot north"
    assert digraph.vertex_name(1) == "1"


@pytest.mark.parametrize(
    ("text", "line", "fragment"),
    [
        ("n 2\narc 0 0 1\n", 2, "self-loop"),
        ("n 2\narc 0 2 1\n", 2, "out of range"),
        ("n 2\narc 0 1 -1\n", 2, "bad label"),
        ("n 2\narc 0 1 x\n", 2, "bad label"),
        ("n 2\narc 0 1\n", 2, "expected"),
        ("n 2\nedge 0 1\n", 2, "unknown record"),
        ("arc 0 1 1\n", 1, "first record"),
        ("n 0\n", 1, "at least 1"),
    ],
)
def test_parse_digraph_errors_carry_line(text: str, line: int, fragment: str) -> None:
    """Verify that malformed input raises FormatError with the offending line."""
    with pytest.raises(FormatError, match=fragment) as exc_info:
        parse_digraph(text)
    assert exc_info.value.line == line


def test_parse_digraph_empty_input() -> None:
    with pytest.raises(FormatError, match="missing"):
        parse_digraph("# nothing\n")


def test_format_digraph_reparses_identically() -> None:
    """Verify that the writer output parses back to the same arcs and labels."""
    digraph = _make_digraph()

    again = parse_digraph(format_digraph(digraph))

    assert [(a.tail, a.head, a.label) for a in again.arcs] == [
        (a.tail, a.head, a.label) for a in digraph.arcs
    ]


# --- Arborescence files ---


def test_parse_arborescence() -> None:
    digraph = _make_digraph()
    tree = parse_arborescence("root 0\nuse 1\nuse 2\n", digraph)

    assert tree == Arborescence.from_arcs(digraph, 0, [1, 2])
    assert format_arborescence(tree) == "root 0\nuse 1\nuse 2\n"


def test_parse_arborescence_requires_root() -> None:
    with pytest.raises(FormatError, match="root"):
        parse_arborescence_record("use 1\n")


def test_parse_arborescence_rejects_duplicate_root() -> None:
    with pytest.raises(FormatError, match="duplicate") as exc_info:
        parse_arborescence_record("root 0\nroot 1\n")
    assert exc_info.value.line == 2


def test_parse_arborescence_unknown_arc() -> None:
    """Verify that arc ids beyond the digraph are rejected."""
    with pytest.raises(InvalidArborescenceError, match="does not exist"):
        parse_arborescence("root 0\nuse 7\n", _make_digraph())


# --- Sequence files ---


def test_sequence_print_then_parse() -> None:
    """Verify that a printed sequence parses back to the same steps."""
    digraph = _make_digraph()
    start = Arborescence.from_arcs(digraph, 0, [0, 2])
    sequence = ReconfSequence(start=start, steps=(ReconfStep(remove=0, add=1),))

    text = format_sequence(sequence, claim="optimal")

    assert text == "length 1\nclaim optimal\nswap -0 +1\n"
    assert parse_sequence(text, start) == sequence


def test_parse_sequence_length_mismatch() -> None:
    start = Arborescence.from_arcs(_make_digraph(), 0, [0, 2])
    with pytest.raises(FormatError, match="declares 2"):
        parse_sequence("length 2\nswap -0 +1\n", start)


def test_parse_sequence_bad_swap() -> None:
    start = Arborescence.from_arcs(_make_digraph(), 0, [0, 2])
    with pytest.raises(FormatError) as exc_info:
        parse_sequence("length 1\nswap 0 1\n", start)
    assert exc_info.value.line == 2


# --- Undirected graph files ---


def test_parse_graph_normalizes_edges() -> None:
    n, edges = parse_graph("n 3\nedge 1 0\nedge 1 2\n")

    assert n == 3
    assert edges == [(0, 1), (1, 2)]
    assert format_graph(n, edges) == "n 3\nedge 0 1\nedge 1 2\n"


def test_parse_graph_empty_graph() -> None:
    assert parse_graph("n 0\n") == (0, [])


@pytest.mark.parametrize(
    ("text", "fragment"),
    [
        ("n 2\nedge 0 0\n", "self-loop"),
        ("n 2\nedge 0 1\nedge 1 0\n", "repeated"),
        ("n 2\nedge 0 5\n", "out of range"),
        ("n 2\narc 0 1 1\n", "expected"),
    ],
)
def test_parse_graph_errors(text: str, fragment: str) -> None:
    with pytest.raises(FormatError, match=fragment):
        parse_graph(text)
