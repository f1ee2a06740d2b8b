"""Edge collapse"""
from typing import Any, Dict, Optional, Sequence

from ..errors import LinkConditionError, StructuralError
from ..mesh.mesh import Mesh
from ..mesh.topology import link_condition
from .records import OperationKind, OperationRecord
from .rollback import Rollback, journaled
from .split import interpolate_vertex


def edge_collapse(mesh: Mesh, edge: Sequence[int], kept_vertex_attrs: Optional[Dict[str, Any]] = None,
                  keep: Optional[int] = None, t: float = 0.0, check_link: bool = True) -> OperationRecord:
    """
    Merge the endpoints of an edge into ``keep`` (default: the smaller id).

    Facets containing the edge are deleted and the removed vertex is renamed
    to the survivor in place in the rest of its star. The survivor's attributes
    become lerp(keep, removed, t) unless ``kept_vertex_attrs`` overrides them.
    Raises LinkConditionError, without touching the mesh, when the link
    condition fails and ``check_link`` is set.
    """
    e = mesh.require(edge)
    if e.dimension != 1:
        raise StructuralError("edge_collapse expects an edge", witness=tuple(e))
    keep = min(e) if keep is None else int(keep)
    if keep not in e:
        raise StructuralError(f"survivor {keep} is not an endpoint", witness=tuple(e))
    removed = e[1] if keep == e[0] else e[0]
    if check_link and not link_condition(mesh, e):
        raise LinkConditionError(f"link condition fails for {tuple(e)}", witness=tuple(e))

    with journaled(mesh) as (journal, mark):
        values = interpolate_vertex(mesh, keep, removed, t)
        if kept_vertex_attrs:
            values.update(kept_vertex_attrs)
        for name, value in values.items():
            mesh.set_vertex_value(name, keep, value)
        deleted = sorted(mesh.cofaces(e))
        affected = {keep, removed}
        for fid in deleted:
            affected.update(mesh.remove_facet(fid))
        modified = sorted(mesh.cofaces((removed,)))
        boundary = set()
        for fid in modified:
            f = mesh.facet(fid)
            affected.update(f)
            boundary.add(tuple(sorted(v for v in f if v != removed)))
            mesh.rename_in_facet(fid, removed, keep)
        mesh.remove_vertex(removed)
        # Facets around the survivor that kept their connectivity but may have moved
        moved = sorted(set(mesh.vertex_facets(keep)) - set(modified))
        for v in sorted(mesh.vertex_neighbors(keep) | {keep}):
            mesh.touch(v)
        mesh.bump_generation()
    correspondence = {v: v for v in sorted(affected)}
    correspondence[removed] = keep
    return OperationRecord(
        kind=OperationKind.COLLAPSE,
        edge=(int(edge[0]), int(edge[1])),
        removed_vertex=removed,
        survivor=keep,
        deleted_facets=deleted,
        modified_facets=modified,
        moved_facets=moved,
        boundary_faces=boundary,
        vertex_correspondence=correspondence,
        rollback=Rollback(journal, mark, mesh.generation),
    )


def raw_collapse(mesh: Mesh, edge: Sequence[int], keep: Optional[int] = None) -> OperationRecord:
    """Collapse without the link condition; may leave an invalid mesh."""
    return edge_collapse(mesh, edge, keep=keep, check_link=False)
