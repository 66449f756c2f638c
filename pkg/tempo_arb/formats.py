"""Line-oriented text formats for digraphs, arborescences, sequences and graphs.

Digraph file::

    # comment
    n 3
    name 0 depot          (optional)
    arc 0 1 5/2
    arc 1 2 3

Arborescence file: ``root <v>`` followed by one ``use <arc-id>`` per arc.
Sequence file: ``length <l>``, an optional ``claim <optimal|valid>`` and one
``swap -<arc-id> +<arc-id>`` per step. Undirected graph file: ``n <count>``
followed by ``edge <u> <v>`` lines.
"""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction

from tempo_arb.digraph import Arborescence, TemporalDigraph, to_label
from tempo_arb.errors import FormatError
from tempo_arb.services.fixed_root import ReconfSequence, ReconfStep


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, fields)`` for every non-blank, non-comment line."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_no, stripped.split()


def _int_field(value: str, line_no: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"{what} {value!r} is not an integer", line_no) from None


def _vertex_count(records: Iterator[tuple[int, list[str]]]) -> tuple[int, int]:
    first = next(records, None)
    if first is None:
        raise FormatError("missing 'n <count>' header")
    line_no, fields = first
    if fields[0] != "n" or len(fields) != 2:
        raise FormatError("first record must be 'n <count>'", line_no)
    count = _int_field(fields[1], line_no, "vertex count")
    return line_no, count


# --- Temporal digraphs ---


def parse_label(value: str, line_no: int | None = None) -> Fraction:
    """Parse a nonnegative decimal (``2.5``) or rational (``5/2``) label."""
    try:
        return to_label(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad label {value!r}: {exc}", line_no) from None


def parse_digraph(text: str) -> TemporalDigraph:
    """Parse the digraph format; arcs get ids 0, 1, 2, ... in file order.

    Raises:
        FormatError: On a malformed line, negative label, self-loop, or
            vertex index out of range, reporting the line number.
    """
    records = _records(text)
    header_line, n = _vertex_count(records)
    if n < 1:
        raise FormatError("vertex count must be at least 1", header_line)

    arcs: list[tuple[int, int, Fraction]] = []
    names: list[str | None] = [None] * n
    for line_no, fields in records:
        kind = fields[0]
        if kind == "arc":
            if len(fields) != 4:
                raise FormatError("expected 'arc <tail> <head> <label>'", line_no)
            tail = _int_field(fields[1], line_no, "tail")
            head = _int_field(fields[2], line_no, "head")
            for v in (tail, head):
                if not 0 <= v < n:
                    raise FormatError(f"vertex {v} out of range 0..{n - 1}", line_no)
            if tail == head:
                raise FormatError(f"self-loop at vertex {tail}", line_no)
            arcs.append((tail, head, parse_label(fields[3], line_no)))
        elif kind == "name":
            if len(fields) < 3:
                raise FormatError("expected 'name <v> <text>'", line_no)
            v = _int_field(fields[1], line_no, "vertex")
            if not 0 <= v < n:
                raise FormatError(f"vertex {v} out of range 0..{n - 1}", line_no)
            names[v] = " ".join(fields[2:])
        elif kind == "n":
            raise FormatError("duplicate 'n' header", line_no)
        else:
            raise FormatError(f"unknown record {kind!r}", line_no)

    return TemporalDigraph(n, arcs, names=names if any(names) else None)


def format_digraph(digraph: TemporalDigraph) -> str:
    """Render a digraph in the format read by :func:`parse_digraph`.

    Args:
        digraph: Digraph to write; arcs keep their ids through file order.

    Returns:
        The text, ending in a newline, with exact labels such as ``2`` or ``5/2``.
    """
    lines = [f"n {digraph.n}"]
    lines.extend(
        f"name {v} {name}" for v, name in enumerate(digraph.names) if name is not None
    )
    lines.extend(f"arc {arc.tail} {arc.head} {arc.label}" for arc in digraph.arcs)
    return "\n".join(lines) + "\n"


# --- Arborescences ---


def parse_arborescence_record(text: str) -> tuple[int, tuple[int, ...]]:
    """Parse ``root``/``use`` records without consulting a digraph."""
    root: int | None = None
    arc_ids: list[int] = []
    for line_no, fields in _records(text):
        if len(fields) != 2:
            raise FormatError(f"expected '{fields[0]} <int>'", line_no)
        if fields[0] == "root":
            if root is not None:
                raise FormatError("duplicate 'root' record", line_no)
            root = _int_field(fields[1], line_no, "root")
        elif fields[0] == "use":
            arc_ids.append(_int_field(fields[1], line_no, "arc id"))
        else:
            raise FormatError(f"unknown record {fields[0]!r}", line_no)
    if root is None:
        raise FormatError("missing 'root <v>' record")
    return root, tuple(arc_ids)


def parse_arborescence(text: str, digraph: TemporalDigraph) -> Arborescence:
    """Parse an arborescence file against ``digraph``.

    Raises:
        FormatError: On malformed records.
        InvalidArborescenceError: On unknown arcs or repeated heads.
    """
    root, arc_ids = parse_arborescence_record(text)
    return Arborescence.from_arcs(digraph, root, arc_ids)


def format_arborescence(tree: Arborescence) -> str:
    """Render ``root`` and one ``use`` record per arc, in arc-id order."""
    lines = [f"root {tree.root}"]
    lines.extend(f"use {arc_id}" for arc_id in tree.key)
    return "\n".join(lines) + "\n"


# --- Reconfiguration sequences ---


def format_sequence(sequence: ReconfSequence, claim: str | None = None) -> str:
    """Render a sequence as a ``length`` header, an optional ``claim`` and ``swap`` lines.

    Args:
        sequence: Sequence to write; its start arborescence is not included.
        claim: ``optimal`` or ``valid``, or None to omit the record.

    Returns:
        Text accepted by :func:`parse_sequence`.
    """
    lines = [f"length {sequence.length}"]
    if claim is not None:
        lines.append(f"claim {claim}")
    lines.extend(f"swap -{step.remove} +{step.add}" for step in sequence.steps)
    return "\n".join(lines) + "\n"


def parse_sequence(text: str, start: Arborescence) -> ReconfSequence:
    """Parse the sequence format; ``start`` is the arborescence it applies to."""
    declared: int | None = None
    steps: list[ReconfStep] = []
    for line_no, fields in _records(text):
        kind = fields[0]
        if kind == "length" and len(fields) == 2:
            declared = _int_field(fields[1], line_no, "length")
        elif kind == "claim" and len(fields) == 2:
            continue
        elif kind == "swap" and len(fields) == 3:
            removed, added = fields[1], fields[2]
            if not (removed.startswith("-") and added.startswith("+")):
                raise FormatError("expected 'swap -<arc-id> +<arc-id>'", line_no)
            steps.append(
                ReconfStep(
                    remove=_int_field(removed[1:], line_no, "arc id"),
                    add=_int_field(added[1:], line_no, "arc id"),
                )
            )
        else:
            raise FormatError(f"unexpected record {' '.join(fields)!r}", line_no)
    if declared is None:
        raise FormatError("missing 'length <l>' header")
    if declared != len(steps):
        raise FormatError(f"header declares {declared} steps but {len(steps)} follow")
    return ReconfSequence(start=start, steps=tuple(steps))


# --- Undirected graphs (Vertex Cover input) ---


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse an undirected simple graph as ``(n, edges)``.

    Raises:
        FormatError: On malformed lines, self-loops, repeated edges or
            out-of-range vertices.
    """
    records = _records(text)
    header_line, n = _vertex_count(records)
    if n < 0:
        raise FormatError("vertex count must be nonnegative", header_line)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, fields in records:
        if fields[0] != "edge" or len(fields) != 3:
            raise FormatError("expected 'edge <u> <v>'", line_no)
        u = _int_field(fields[1], line_no, "vertex")
        v = _int_field(fields[2], line_no, "vertex")
        for w in (u, v):
            if not 0 <= w < n:
                raise FormatError(f"vertex {w} out of range 0..{n - 1}", line_no)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", line_no)
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise FormatError(f"repeated edge {edge[0]}-{edge[1]}", line_no)
        seen.add(edge)
        edges.append(edge)
    return n, edges


def format_graph(n: int, edges: list[tuple[int, int]]) -> str:
    """Render a Vertex Cover input graph as ``n`` and ``edge`` records."""
    lines = [f"n {n}"]
    lines.extend(f"edge {u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
