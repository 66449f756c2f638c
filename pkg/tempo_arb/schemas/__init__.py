"""Pydantic schemas for every JSON rendering."""

from tempo_arb.schemas.arborescences import (
    ArborescenceResponse,
    ArcItem,
    MinimalResponse,
    ValidationReport,
)
from tempo_arb.schemas.envelope import CommandEnvelope
from tempo_arb.schemas.hardness import (
    ArcRoles,
    HardnessSidecar,
    VertexRoles,
)
from tempo_arb.schemas.oracle import EnumerationResponse
from tempo_arb.schemas.search import NoInstanceReport
from tempo_arb.schemas.sequences import (
    SequenceResponse,
    StepItem,
)

__all__ = [
    "ArborescenceResponse",
    "ArcItem",
    "ArcRoles",
    "CommandEnvelope",
    "EnumerationResponse",
    "HardnessSidecar",
    "MinimalResponse",
    "NoInstanceReport",
    "SequenceResponse",
    "StepItem",
    "ValidationReport",
    "VertexRoles",
]
