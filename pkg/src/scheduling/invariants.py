"""Declarative invariants checked around propagated operations"""
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import StructuralError
from ..mesh.geometry import edge_length, signed_area, signed_volume
from ..mesh.mesh import POSITION, Mesh

# facets=None means "check every alive facet"
Predicate = Callable[[Mesh, Optional[Iterable[int]]], bool]
Touched = Dict[str, Set[int]]


class Phase(str, Enum):
    """When an invariant is evaluated relative to the mutation."""
    BEFORE = "before"
    AFTER = "after"


class Invariant(BaseModel):
    """A named predicate over one node's mesh."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(..., description="Identifier used in statistics and logs")
    scope_node: str = Field(..., description="Multimesh node the predicate inspects")
    phase: Phase = Field(Phase.AFTER, description="Evaluated before or after the mutation")
    predicate: Predicate = Field(..., description="Pure function (mesh, facets) -> bool")


def _alive(mesh: Mesh, facets: Optional[Iterable[int]]) -> List[int]:
    if facets is None:
        return mesh.facet_ids()
    return sorted(f for f in set(facets) if mesh.is_facet_alive(f))


def positive_volume(mesh: Mesh, facets: Optional[Iterable[int]] = None) -> bool:
    """Every (checked) tet has positive signed volume in its stored vertex order."""
    if mesh.dimension != 3:
        raise StructuralError("positive_volume needs a 3-mesh")
    positions = mesh.vertex_attribute(POSITION).values
    return all(signed_volume(positions[list(mesh.facet(f))]) > 0.0 for f in _alive(mesh, facets))


def no_uv_inversion(mesh: Mesh, facets: Optional[Iterable[int]] = None, attribute: str = "uv") -> bool:
    """Every (checked) triangle has positive signed area in the 2D attribute."""
    if mesh.dimension != 2:
        raise StructuralError("no_uv_inversion needs a 2-mesh")
    attr = mesh.vertex_attribute(attribute)
    if attr.width != 2:
        raise StructuralError(f"attribute '{attribute}' is not two dimensional")
    values = attr.values
    return all(signed_area(values[list(mesh.facet(f))]) > 0.0 for f in _alive(mesh, facets))


def positive_volume_invariant(node: str) -> Invariant:
    return Invariant(name="positive_volume", scope_node=node, predicate=positive_volume)


def no_inversion_invariant(node: str, attribute: str = "uv") -> Invariant:
    return Invariant(name=f"no_inversion[{attribute}]", scope_node=node,
                     predicate=lambda mesh, facets: no_uv_inversion(mesh, facets, attribute))


def max_edge_length_invariant(node: str, limit: float, attribute: str = POSITION) -> Invariant:
    """Edges of touched facets stay no longer than ``limit``."""

    def predicate(mesh: Mesh, facets: Optional[Iterable[int]]) -> bool:
        for f in _alive(mesh, facets):
            verts = mesh.facet(f)
            for i in range(len(verts)):
                for j in range(i + 1, len(verts)):
                    if edge_length(mesh, (verts[i], verts[j]), attribute) > limit:
                        return False
        return True

    return Invariant(name="max_edge_length", scope_node=node, predicate=predicate)


def failed_invariants(mm, touched: Optional[Touched], phase: Phase,
                      extra: Sequence[Invariant] = ()) -> List[Invariant]:
    """
    Invariants of the given phase that do not hold.

    ``touched`` maps node ids to the facets to inspect; a node missing from it
    was not modified and is skipped. ``None`` inspects every facet of every
    scoped node.
    """
    failed = []
    for inv in list(mm.invariants) + list(extra):
        if inv.phase != phase:
            continue
        if touched is None:
            facets = None
        elif inv.scope_node in touched:
            facets = touched[inv.scope_node]
        else:
            continue
        if not inv.predicate(mm.mesh(inv.scope_node), facets):
            failed.append(inv)
    return failed


def check_invariants(mm, touched: Optional[Touched], phase: Phase, extra: Sequence[Invariant] = ()) -> bool:
    return not failed_invariants(mm, touched, phase, extra)


def signed_measures(mesh: Mesh, attribute: str = POSITION) -> np.ndarray:
    """Signed area (2-meshes) or volume (3-meshes) of every alive facet."""
    values = mesh.vertex_attribute(attribute).values
    measure = signed_volume if mesh.dimension == 3 else signed_area
    return np.array([measure(values[list(f)]) for _, f in mesh.facets()])
