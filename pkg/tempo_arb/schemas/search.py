"""No-instance report schema."""

from pydantic import BaseModel

from tempo_arb.schemas.arborescences import ArborescenceResponse


class NoInstanceReport(BaseModel):
    """Outcome of a seeded no-instance search; ``digraph`` is in the text format."""

    found: bool
    seed: int
    attempt: int | None = None
    digraph: str | None = None
    tree1: ArborescenceResponse | None = None
    tree2: ArborescenceResponse | None = None
