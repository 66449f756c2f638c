"""Shortest reconfiguration between time-respecting arborescences with one root.

Both arborescences are walked towards the minimal arborescence T* of their
union D* = T1 + T2, replacing in-arcs in the greedy selection order; the walk
from T2 is then reversed. Every arc shared by T1 and T2 is the only arc into
its head in D*, so it stays in T*, and the total length is |T1 \\ T2|.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from tempo_arb.digraph import (
    Arborescence,
    TemporalDigraph,
    arborescence_from_arcs,
    is_arborescence,
    is_time_respecting,
    require_time_respecting,
)
from tempo_arb.errors import InvalidSequenceError, InvariantViolation, RootMismatchError
from tempo_arb.services.minimal import minimal_arborescence

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ReconfStep:
    """Remove one arc and add another."""

    remove: int
    add: int

    def __post_init__(self) -> None:
        if self.remove == self.add:
            raise ValueError(f"step removes and adds the same arc {self.remove}")


@dataclass(frozen=True, slots=True)
class ReconfSequence:
    """A start arborescence and the swaps applied to it in order."""

    start: Arborescence
    steps: tuple[ReconfStep, ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    def then(self, steps: Sequence[ReconfStep]) -> ReconfSequence:
        """Copy with ``steps`` appended."""
        return ReconfSequence(start=self.start, steps=self.steps + tuple(steps))

    def trees(self, digraph: TemporalDigraph) -> Iterator[Arborescence]:
        """Yield the start and every intermediate arborescence.

        Raises:
            InvalidSequenceError: If a step does not apply or breaks the
                arborescence structure.
        """
        yield self.start
        state = set(self.start.arc_ids)
        for index, step in enumerate(self.steps, start=1):
            if step.remove not in state or step.add in state:
                raise InvalidSequenceError(
                    f"step {index} (-{step.remove} +{step.add}) does not apply"
                )
            state.discard(step.remove)
            state.add(step.add)
            tree = arborescence_from_arcs(digraph, state)
            if tree is None:
                raise InvalidSequenceError(f"step {index} leaves no arborescence")
            yield tree


def verify_sequence(
    digraph: TemporalDigraph,
    sequence: ReconfSequence,
    target: Arborescence,
) -> bool:
    """Replay ``sequence`` and check every arborescence along the way.

    Returns:
        True iff the start and each prefix application are time-respecting
        arborescences of ``digraph`` (the root may move) and the last one has
        the same arc set as ``target``.
    """
    start = sequence.start
    if not is_arborescence(digraph, start.key, start.root):
        return False
    last = start
    try:
        for tree in sequence.trees(digraph):
            if not is_time_respecting(digraph, tree):
                logger.debug("Sequence reaches a non-time-respecting arborescence %s", tree)
                return False
            last = tree
    except InvalidSequenceError as exc:
        logger.debug("Sequence replay failed: %s", exc)
        return False
    return last.arc_ids == target.arc_ids


def _steps_towards(
    digraph: TemporalDigraph, tree: Arborescence, selection: Sequence[int]
) -> list[ReconfStep]:
    """Swaps turning ``tree`` into the arborescence selected in ``selection`` order."""
    steps: list[ReconfStep] = []
    for arc_id in selection:
        current = tree.in_arc[digraph.arcs[arc_id].head]
        if current != arc_id:
            steps.append(ReconfStep(remove=current, add=arc_id))
    return steps


def reconfigure_same_root(
    digraph: TemporalDigraph,
    tree1: Arborescence,
    tree2: Arborescence,
) -> ReconfSequence:
    """Shortest sequence between two time-respecting arborescences with one root.

    Args:
        digraph: Temporal digraph.
        tree1: Start arborescence.
        tree2: Target arborescence with the same root.

    Returns:
        A sequence of exactly ``|A(tree1) \\ A(tree2)|`` swaps whose
        intermediates are all time-respecting arborescences of ``digraph``
        rooted at the common root.

    Raises:
        InvalidArborescenceError: If either input is not a time-respecting
            arborescence of ``digraph``.
        RootMismatchError: If the roots differ.
    """
    require_time_respecting(digraph, tree1)
    require_time_respecting(digraph, tree2)
    if tree1.root != tree2.root:
        raise RootMismatchError(tree1.root, tree2.root)

    union = digraph.subgraph(tree1.arc_ids | tree2.arc_ids)
    result = minimal_arborescence(union.digraph, tree1.root)
    if result is None:
        raise InvariantViolation("union of two arborescences has no minimal arborescence")
    selection = [union.arc_origin[arc_id] for arc_id in result.selection_order]

    shared = tree1.arc_ids & tree2.arc_ids
    if not shared <= set(selection):
        raise InvariantViolation("minimal arborescence of the union drops a shared arc")

    forward = _steps_towards(digraph, tree1, selection)
    backward = _steps_towards(digraph, tree2, selection)
    steps = forward + [ReconfStep(remove=s.add, add=s.remove) for s in reversed(backward)]

    expected = len(tree1.arc_ids - tree2.arc_ids)
    if len(steps) != expected:
        raise InvariantViolation(f"sequence has {len(steps)} steps, expected {expected}")
    for step in steps:
        if digraph.arcs[step.remove].head != digraph.arcs[step.add].head:
            raise InvariantViolation(f"step -{step.remove} +{step.add} changes the root")

    logger.debug(
        "Same-root reconfiguration at root %d: %d + %d step(s) via the minimal arborescence",
        tree1.root,
        len(forward),
        len(backward),
    )
    return ReconfSequence(start=tree1, steps=tuple(steps))
