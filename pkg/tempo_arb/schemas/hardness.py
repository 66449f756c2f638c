"""Hardness instance sidecar schema."""

from pydantic import BaseModel

from tempo_arb.services.hardness import HardnessInstance, LabelVariant


class ArcRoles(BaseModel):
    """Arc ids per construction class; ``cover`` maps each edge index to {endpoint: arc id}."""

    a1_r1: list[int]
    a1_r2: list[int]
    a2_r1_r2: int
    a2_r2_r1: int
    a3: list[int]
    a4: list[dict[int, int]]
    a5: list[int]
    arc_class: list[int]


class VertexRoles(BaseModel):
    """Digraph vertex ids: r1, r2, w_v per graph vertex, w_e per edge."""

    r1: int
    r2: int
    w_vertex: list[int]
    w_edge: list[int]


class HardnessSidecar(BaseModel):
    """JSON written next to a generated instance."""

    variant: LabelVariant
    n: int
    edges: list[tuple[int, int]]
    k: int
    ell: int
    vertices: VertexRoles
    arcs: ArcRoles

    @classmethod
    def from_instance(cls, instance: HardnessInstance) -> "HardnessSidecar":
        roles = instance.roles
        return cls(
            variant=instance.variant,
            n=instance.source.n,
            edges=list(instance.source.edges),
            k=instance.source.k,
            ell=instance.ell,
            vertices=VertexRoles(
                r1=roles.r1,
                r2=roles.r2,
                w_vertex=list(roles.vertex_nodes),
                w_edge=list(roles.edge_nodes),
            ),
            arcs=ArcRoles(
                a1_r1=list(roles.r1_edge_arcs),
                a1_r2=list(roles.r2_edge_arcs),
                a2_r1_r2=roles.r1_r2_arc,
                a2_r2_r1=roles.r2_r1_arc,
                a3=list(roles.a_arcs),
                a4=[dict(cover) for cover in roles.cover_arcs],
                a5=list(roles.a_prime_arcs),
                arc_class=list(roles.arc_class),
            ),
        )
