"""Edge split"""
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors import StructuralError
from ..mesh.mesh import Mesh
from .records import OperationKind, OperationRecord
from .rollback import Rollback, journaled


def interpolate_vertex(mesh: Mesh, a: int, b: int, t: float) -> Dict[str, np.ndarray]:
    """Attribute values at parameter t along a -> b; integer attributes are taken from a."""
    values: Dict[str, np.ndarray] = {}
    for name, attr in mesh.vertex_attributes.items():
        va, vb = attr[a], attr[b]
        if np.issubdtype(attr.dtype, np.floating):
            values[name] = (1.0 - t) * va + t * vb
        else:
            values[name] = va
    return values


def edge_split(mesh: Mesh, edge: Sequence[int], new_vertex_attrs: Optional[Dict[str, Any]] = None,
               t: float = 0.5) -> OperationRecord:
    """
    Split edge (a, b) with a new vertex c.

    Every facet containing the edge is replaced by sigma_a (b -> c) and sigma_b
    (a -> c); both inherit the facet attributes and the slot order, so
    orientation is preserved. New vertex attributes are interpolated at ``t``
    unless given.
    """
    a, b = int(edge[0]), int(edge[1])
    e = mesh.require((a, b))
    if e.dimension != 1:
        raise StructuralError("edge_split expects an edge", witness=tuple(e))
    star = sorted(mesh.cofaces(e))
    pairs: Dict[int, tuple] = {}
    created: List[int] = []
    boundary = set()
    old_vertices = {a, b}
    with journaled(mesh) as (journal, mark):
        values = interpolate_vertex(mesh, a, b, t)
        if new_vertex_attrs:
            values.update(new_vertex_attrs)
        c = mesh.add_vertex(values)
        for fid in star:
            f = mesh.facet(fid)
            record = mesh.facet_record(fid)
            mesh.remove_facet(fid)
            fa = mesh.add_facet(tuple(c if v == b else v for v in f), record)
            fb = mesh.add_facet(tuple(c if v == a else v for v in f), record)
            pairs[fid] = (fa, fb)
            old_vertices.update(f)
            created += [fa, fb]
            boundary.add(tuple(sorted(v for v in f if v != a)))
            boundary.add(tuple(sorted(v for v in f if v != b)))
        touched = {a, b, c}
        for fid in created:
            touched.update(mesh.facet(fid))
        for v in sorted(touched):
            mesh.touch(v)
        mesh.bump_generation()
    return OperationRecord(
        kind=OperationKind.SPLIT,
        edge=(a, b),
        new_vertex=c,
        deleted_facets=star,
        created_facets=created,
        boundary_faces=boundary,
        vertex_correspondence={v: v for v in sorted(old_vertices)},
        split_pairs=pairs,
        rollback=Rollback(journal, mark, mesh.generation),
    )

