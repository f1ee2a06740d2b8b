"""Building containment maps from facet pairings or from tagged simplices"""
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from ..errors import ConstructionError
from ..mesh.dart import Dart
from ..mesh.mesh import Mesh
from ..mesh.simplex import Simplex, oriented_face, sorted_key
from ..mesh.topology import validate
from .containment import Anchor, ContainmentMap


class FacetPairing(BaseModel):
    """One paired facet with its per-corner vertex correspondence."""
    parent_facet: int = Field(..., description="Facet id in the parent mesh")
    child_facet: int = Field(..., description="Facet id in the child mesh")
    corners: List[Tuple[int, int]] = Field(..., description="(child vertex, parent vertex) per corner")


def pairing_from_corners(corners: Sequence[Sequence[Tuple[int, int]]]) -> List[FacetPairing]:
    """Pair facet i of the parent with facet i of the child."""
    return [FacetPairing(parent_facet=i, child_facet=i, corners=[tuple(c) for c in cs])
            for i, cs in enumerate(corners)]


def identity_pairing(mesh: Mesh) -> List[FacetPairing]:
    return [FacetPairing(parent_facet=fid, child_facet=fid, corners=[(v, v) for v in f])
            for fid, f in mesh.facets()]


def from_facet_bijection(parent: Mesh, child: Mesh, pairing: Iterable[FacetPairing]) -> ContainmentMap:
    """
    Containment map between two meshes with the same number of facets.

    Every child facet is paired with one parent facet and each corner says
    which parent vertex a child vertex corresponds to. The correspondence must
    be one global child -> parent vertex map, otherwise faces would not be
    preserved and ConstructionError names the offending vertex.
    """
    pairing = list(pairing)
    if parent.dimension != child.dimension:
        raise ConstructionError(
            f"facet bijection needs equal dimensions, got {child.dimension} and {parent.dimension}")
    if parent.num_facets != child.num_facets or len(pairing) != child.num_facets:
        raise ConstructionError(
            f"facet counts differ: parent {parent.num_facets}, child {child.num_facets}, pairs {len(pairing)}")
    global_map: Dict[int, int] = {}
    used_parent: Dict[int, int] = {}
    cmap = ContainmentMap(parent, child)
    for pair in pairing:
        if not parent.is_facet_alive(pair.parent_facet) or not child.is_facet_alive(pair.child_facet):
            raise ConstructionError("pairing references a missing facet", witness=(pair.parent_facet, pair.child_facet))
        if pair.parent_facet in used_parent or pair.child_facet in cmap.anchors:
            raise ConstructionError("facet paired twice", witness=(pair.parent_facet, pair.child_facet))
        local = dict(pair.corners)
        child_vertices = sorted_key(child.facet(pair.child_facet))
        parent_vertices = sorted_key(parent.facet(pair.parent_facet))
        if (len(local) != len(pair.corners) or tuple(sorted(local)) != child_vertices
                or tuple(sorted(local.values())) != parent_vertices):
            raise ConstructionError(
                f"corners of child facet {pair.child_facet} are not a bijection onto parent facet {pair.parent_facet}",
                witness=pair.child_facet)
        for c, p in local.items():
            if global_map.setdefault(c, p) != p:
                raise ConstructionError(
                    f"child vertex {c} corresponds to parent vertices {global_map[c]} and {p}", witness=c)
        used_parent[pair.parent_facet] = pair.child_facet
        images = tuple(local[v] for v in child_vertices)
        cmap.set_anchor(pair.child_facet, Anchor(Dart(child_vertices, pair.child_facet),
                                                 Dart(images, pair.parent_facet)))
    return cmap


TagSpec = Union[Callable[[Simplex], bool], Iterable[Sequence[int]]]


def from_tags(parent: Mesh, tag: TagSpec, k: int) -> Tuple[Mesh, ContainmentMap]:
    """
    Child k-mesh made of the tagged k-simplices of ``parent``.

    Child vertex ids follow the sorted order of the parent vertices used, and
    vertex attributes are copied. Tagged facets keep the parent orientation;
    tagged boundary faces take the induced (outward) orientation.
    """
    if not 0 <= k <= parent.dimension:
        raise ConstructionError(f"cannot tag {k}-simplices of a {parent.dimension}-mesh")
    if callable(tag):
        tagged = [s for s in parent.simplices(k) if tag(s)]
    else:
        tagged = sorted({Simplex(s) for s in tag})
        for s in tagged:
            if s.dimension != k or not parent.has_simplex(s):
                raise ConstructionError(f"tagged simplex {tuple(s)} is not a {k}-simplex of the parent",
                                        witness=tuple(s))
    if not tagged:
        raise ConstructionError("no simplices tagged")

    used = sorted({v for s in tagged for v in s})
    to_child = {p: i for i, p in enumerate(used)}
    ordered_facets: List[Tuple[int, ...]] = []
    sources: List[int] = []
    for s in tagged:
        facets = sorted(parent.cofaces(s))
        if k == parent.dimension:
            fid = facets[0]
            ordered = parent.facet(fid)
            sources.append(fid)
        elif k == parent.dimension - 1 and len(facets) == 1:
            host = parent.facet(facets[0])
            (dropped,) = set(host) - set(s)
            ordered = oriented_face(host, dropped)
            sources.append(-1)
        else:
            ordered = tuple(s)
            sources.append(-1)
        ordered_facets.append(tuple(to_child[v] for v in ordered))

    child = Mesh.from_facets(k, ordered_facets, vertex_count=len(used))
    for name, attr in parent.vertex_attributes.items():
        child.add_vertex_attribute(name, attr.width, attr.dtype, values=attr.values[used], default=attr.default)
    if k == parent.dimension:
        for name, attr in parent.facet_attributes.items():
            child.add_facet_attribute(name, attr.width, attr.dtype, values=attr.values[sources], default=attr.default)

    report = validate(child)
    if not report.is_valid:
        first = report.violations[0]
        raise ConstructionError(
            f"tagged set is not a valid {k}-mesh: {first.condition.value} at parent simplex "
            f"{tuple(used[v] for v in first.witness)}",
            witness=tuple(used[v] for v in first.witness))

    cmap = ContainmentMap(parent, child)
    for fid, _ in child.facets():
        cmap.set_anchor(fid, cmap.build_anchor(fid, {v: used[v] for v in child.facet(fid)}))
    return child, cmap
