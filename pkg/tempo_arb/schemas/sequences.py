"""Reconfiguration sequence schemas."""

from typing import Literal

from pydantic import BaseModel

from tempo_arb.digraph import TemporalDigraph
from tempo_arb.schemas.arborescences import ArborescenceResponse
from tempo_arb.services.fixed_root import ReconfSequence


class StepItem(BaseModel):
    """One swap: remove an arc id, add an arc id."""

    remove: int
    add: int


class SequenceResponse(BaseModel):
    """Sequence with its claim and, on request, every intermediate arborescence."""

    reachable: bool
    claim: Literal["optimal", "valid"] | None = None
    length: int | None = None
    steps: list[StepItem] = []
    trees: list[ArborescenceResponse] | None = None

    @classmethod
    def from_sequence(
        cls,
        digraph: TemporalDigraph,
        sequence: ReconfSequence,
        claim: Literal["optimal", "valid"],
        *,
        with_trees: bool = False,
    ) -> "SequenceResponse":
        trees = None
        if with_trees:
            trees = [ArborescenceResponse.from_tree(digraph, t) for t in sequence.trees(digraph)]
        return cls(
            reachable=True,
            claim=claim,
            length=sequence.length,
            steps=[StepItem(remove=s.remove, add=s.add) for s in sequence.steps],
            trees=trees,
        )
