"""Laplacian vertex smoothing with per-vertex rollback"""
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .. import config
from ..errors import InvariantViolation
from ..mesh.mesh import POSITION, Mesh
from ..multimesh.multimesh import MultiMesh
from .invariants import Invariant, Phase, failed_invariants


def vertex_normal(mesh: Mesh, v: int, attribute: str = POSITION) -> Optional[np.ndarray]:
    """Area-weighted normal of a surface vertex, or None outside embedded 2-meshes."""
    values = mesh.vertex_attribute(attribute).values
    if mesh.dimension != 2 or values.shape[1] != 3:
        return None
    n = np.zeros(3)
    for fid in mesh.vertex_facets(v):
        p = values[list(mesh.facet(fid))]
        n += np.cross(p[1] - p[0], p[2] - p[0])
    norm = np.linalg.norm(n)
    return n / norm if norm > 0 else None


def laplacian_target(mesh: Mesh, v: int, weight: float, attribute: str = POSITION,
                     tangential: bool = True) -> Optional[np.ndarray]:
    """Position moved ``weight`` of the way to the neighbour centroid."""
    nbrs = sorted(mesh.vertex_neighbors(v))
    if not nbrs:
        return None
    values = mesh.vertex_attribute(attribute).values
    p = values[v]
    delta = values[nbrs].mean(axis=0) - p
    if tangential:
        n = vertex_normal(mesh, v, attribute)
        if n is not None:
            delta = delta - float(delta @ n) * n
    return p + weight * delta


def smooth_vertices(mm: MultiMesh, node: str, vertices: Iterable[int], weight: Optional[float] = None,
                    attribute: str = POSITION, tangential: bool = True,
                    invariants: Sequence[Invariant] = ()) -> Tuple[int, int]:
    """
    Move each vertex toward its neighbours' centroid, one transaction per vertex.

    The new value is written on every node sharing the attribute through the
    maps. A move that breaks an after-invariant on any written node is rolled
    back. Returns (moved, rejected).
    """
    weight = config.SMOOTHING_WEIGHT if weight is None else weight
    mesh = mm.mesh(node)
    moved = rejected = 0
    for v in sorted(vertices):
        if not mesh.is_vertex_alive(v):
            continue
        target = laplacian_target(mesh, v, weight, attribute, tangential)
        if target is None:
            continue
        try:
            with mm.transaction():
                written = mm.set_vertex_attribute(node, v, attribute, target)
                touched = {}
                for n, u in written:
                    touched.setdefault(n, set()).update(mm.nodes[n].vertex_facets(u))
                failed = failed_invariants(mm, touched, Phase.AFTER, invariants)
                if failed:
                    raise InvariantViolation(f"smoothing vertex {v} breaks '{failed[0].name}'", witness=v)
        except InvariantViolation:
            rejected += 1
            continue
        moved += 1
    return moved, rejected
