"""Arborescence and minimal-arborescence schemas."""

from pydantic import BaseModel

from tempo_arb.digraph import Arborescence, TemporalDigraph
from tempo_arb.services.minimal import MinimalArbResult


class ArcItem(BaseModel):
    """One arc with its exact label rendered as a string (``"5/2"``)."""

    id: int
    tail: int
    head: int
    label: str


class ArborescenceResponse(BaseModel):
    """Root plus arcs sorted by id."""

    root: int
    arcs: list[ArcItem] = []

    @classmethod
    def from_tree(cls, digraph: TemporalDigraph, tree: Arborescence) -> "ArborescenceResponse":
        return cls(
            root=tree.root,
            arcs=[
                ArcItem(
                    id=arc_id,
                    tail=digraph.arcs[arc_id].tail,
                    head=digraph.arcs[arc_id].head,
                    label=str(digraph.arcs[arc_id].label),
                )
                for arc_id in tree.key
            ],
        )


class ValidationReport(BaseModel):
    """Per-check verdicts for an arborescence file."""

    is_arborescence: bool
    is_time_respecting: bool
    violations: list[tuple[int, int]] = []
    diagnostics: list[str] = []


class MinimalResponse(BaseModel):
    """Minimal arborescence with its arrival label table (vertex -> label)."""

    feasible: bool
    root: int
    arborescence: ArborescenceResponse | None = None
    d_prime: dict[int, str] = {}
    selection_order: list[int] = []

    @classmethod
    def from_result(
        cls, digraph: TemporalDigraph, root: int, result: MinimalArbResult | None
    ) -> "MinimalResponse":
        if result is None:
            return cls(feasible=False, root=root)
        return cls(
            feasible=True,
            root=root,
            arborescence=ArborescenceResponse.from_tree(digraph, result.tree),
            d_prime={v: str(label) for v, label in sorted(result.d_prime.items())},
            selection_order=list(result.selection_order),
        )
