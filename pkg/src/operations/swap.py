"""Edge swap realised as a split followed by a collapse"""
from typing import List, Sequence

import numpy as np

from ..errors import BoundaryError, LinkConditionError, OperationRejected
from ..mesh.geometry import quality
from ..mesh.mesh import POSITION, Mesh
from .collapse import edge_collapse
from .records import OperationKind, OperationRecord
from .rollback import Rollback, journaled
from .split import edge_split


def swap_candidates(mesh: Mesh, edge: Sequence[int]) -> List[int]:
    """
    Opposite vertices to try as the collapse target, best first.

    2-meshes try the smaller id first. For 3-meshes with positions the ring
    vertex whose resulting tets have the best minimum quality comes first.
    """
    a, b = int(edge[0]), int(edge[1])
    star = [mesh.facet(fid) for fid in sorted(mesh.cofaces((a, b)))]
    ring = sorted({v for f in star for v in f} - {a, b})
    if mesh.dimension < 3 or not mesh.has_vertex_attribute(POSITION):
        return ring
    positions = mesh.vertex_attribute(POSITION).values

    def predicted(c: int) -> float:
        worst = np.inf
        for f in star:
            if c in f:
                continue
            for old in (b, a):
                tet = [c if v == old else v for v in f]
                worst = min(worst, quality(positions[tet]))
        return worst

    return sorted(ring, key=lambda c: (-predicted(c), c))


def edge_swap(mesh: Mesh, edge: Sequence[int]) -> OperationRecord:
    """
    Swap an interior edge: split at the midpoint producing m, then collapse
    (m, c) onto an opposite vertex c.

    In a 2-mesh this is the classical edge flip. Candidates rejected by the
    link condition are undone and the next one is tried; if none works the
    mesh is left untouched and LinkConditionError is raised.
    """
    e = mesh.require(edge)
    if mesh.dimension < 2:
        raise OperationRejected(f"swap needs a mesh of dimension 2 or 3, got {mesh.dimension}", witness=tuple(e))
    if mesh.is_boundary(e):
        raise BoundaryError(f"cannot swap boundary edge {tuple(e)}", witness=tuple(e))
    a, b = int(edge[0]), int(edge[1])
    candidates = swap_candidates(mesh, (a, b))
    with journaled(mesh) as (journal, mark):
        for c in candidates:
            attempt = journal.mark()
            split = edge_split(mesh, (a, b), t=0.5)
            m = split.new_vertex
            try:
                collapse = edge_collapse(mesh, (m, c), keep=c, t=0.0)
            except LinkConditionError:
                journal.unwind_to(attempt)
                continue
            created = sorted(set(split.created_facets) - set(collapse.deleted_facets))
            correspondence = dict(split.vertex_correspondence)
            return OperationRecord(
                kind=OperationKind.SWAP,
                edge=(a, b),
                survivor=c,
                deleted_facets=list(split.deleted_facets),
                created_facets=created,
                boundary_faces=set(split.boundary_faces),
                vertex_correspondence=correspondence,
                rollback=Rollback(journal, mark, mesh.generation),
                children=[split, collapse],
            )
        raise LinkConditionError(f"no opposite vertex admits a swap of {tuple(e)}", witness=tuple(e))
