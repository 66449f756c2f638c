"""Enumeration listing schema."""

from pydantic import BaseModel

from tempo_arb.schemas.arborescences import ArborescenceResponse


class EnumerationResponse(BaseModel):
    """All time-respecting arborescences and the components of the reconfiguration graph."""

    node_count: int
    edge_count: int
    arborescences: list[ArborescenceResponse] = []
    components: list[list[int]] = []
    dot: str | None = None
