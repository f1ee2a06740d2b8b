"""Validity checking, links, the link condition and global counts"""
from collections import defaultdict
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import StructuralError
from .mesh import Mesh
from .simplex import VIRTUAL_VERTEX, Simplex, sorted_key


class Condition(str, Enum):
    """Validity conditions a mesh can violate."""
    CLOSURE = "closure"
    INTERSECTION = "intersection"
    PURE = "pure"
    MANIFOLD = "manifold"
    LINK_MANIFOLD = "link_manifold"


class Violation(BaseModel):
    """One violated condition with the simplex that witnesses it."""
    condition: Condition = Field(..., description="Which condition failed")
    witness: List[int] = Field(..., description="Vertex set of the offending simplex")
    detail: str = Field("", description="Human readable explanation")


class ValidityReport(BaseModel):
    """Result of validate(); empty violations means the mesh is valid."""
    dimension: int = Field(..., description="Dimension of the checked mesh")
    violations: List[Violation] = Field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def conditions(self) -> Set[Condition]:
        return {v.condition for v in self.violations}

    def lines(self) -> List[str]:
        return [f"{v.condition.value}: {tuple(v.witness)} {v.detail}".rstrip() for v in self.violations]


def validate(mesh: Mesh, strict: bool = False) -> ValidityReport:
    """
    Check a mesh against the closure, intersection, pure and manifold conditions.

    With ``strict`` a 3-mesh must additionally have a connected path-or-cycle
    link around every edge (edges at a realised cone apex are exempt). Malformed
    connectivity raises StructuralError instead of being reported.
    """
    d = mesh.dimension
    for fid, f in mesh.facets():
        if len(f) != d + 1:
            raise StructuralError(f"facet {fid} has {len(f)} vertices", witness=f)
        for v in f:
            if not mesh.is_vertex_alive(v):
                raise StructuralError(f"facet {fid} references unknown vertex {v}", witness=f)
    for s in mesh.loose:
        for v in s:
            if not mesh.is_vertex_alive(v):
                raise StructuralError(f"loose simplex references unknown vertex {v}", witness=s)

    report = ValidityReport(dimension=d)
    index = mesh._index()
    present = set(index) | set(mesh.loose) | {(v,) for v in mesh.vertices()}

    for s in sorted(mesh.loose):
        for k in range(1, len(s)):
            for face in combinations(s, k):
                if face not in present:
                    report.violations.append(Violation(
                        condition=Condition.CLOSURE, witness=list(face),
                        detail=f"face of {s} missing from the complex"))

    groups: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    for fid, f in mesh.facets():
        groups[sorted_key(f)].append(fid)
    for key, fids in sorted(groups.items()):
        if len(fids) > 1:
            report.violations.append(Violation(
                condition=Condition.INTERSECTION, witness=list(key),
                detail=f"facets {fids} coincide"))

    if d > 0:
        for s in sorted(mesh.loose):
            if s not in index:
                report.violations.append(Violation(
                    condition=Condition.PURE, witness=list(s), detail="not a face of any facet"))
        for v in mesh.isolated_vertices():
            if (v,) not in mesh.loose:
                report.violations.append(Violation(
                    condition=Condition.PURE, witness=[v], detail="vertex in no facet"))
        for key in sorted(k for k in index if len(k) == d):
            incident = len(index[key])
            if incident > 2:
                report.violations.append(Violation(
                    condition=Condition.MANIFOLD, witness=list(key),
                    detail=f"{incident} incident facets"))

    if strict and d == 3:
        for key in sorted(k for k in index if len(k) == 2):
            if mesh.apex is not None and mesh.apex in key:
                continue
            if not _is_path_or_cycle([tuple(v for v in mesh._facets[f] if v not in key) for f in index[key]]):
                report.violations.append(Violation(
                    condition=Condition.LINK_MANIFOLD, witness=list(key),
                    detail="edge link is not a single path or cycle"))
    return report


def _is_path_or_cycle(edges: Sequence[Tuple[int, int]]) -> bool:
    adjacency: Dict[int, Set[int]] = defaultdict(set)
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    if any(len(nbrs) > 2 for nbrs in adjacency.values()):
        return False
    start = next(iter(adjacency))
    seen, stack = {start}, [start]
    while stack:
        for n in adjacency[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(adjacency)


# ----------------------------------------------------------------------
# Links
# ----------------------------------------------------------------------

def _star(mesh: Mesh, key: Tuple[int, ...], coned: bool) -> List[Tuple[int, ...]]:
    """Facets containing ``key``, plus virtual cone facets over boundary faces when coned."""
    star = [mesh._facets[fid] for fid in mesh.cofaces(key)]
    if coned and mesh.dimension > 0:
        members = set(key)
        virtual = []
        for f in star:
            for dropped in f:
                if dropped in members:
                    continue
                face = tuple(v for v in f if v != dropped)
                if len(mesh.cofaces(face)) == 1:
                    virtual.append(face + (VIRTUAL_VERTEX,))
        star = star + virtual
    return star


def _link_keys(mesh: Mesh, key: Tuple[int, ...], coned: bool) -> Set[Tuple[int, ...]]:
    members = set(key)
    out: Set[Tuple[int, ...]] = set()
    for f in _star(mesh, key, coned):
        rest = sorted(v for v in f if v not in members)
        for k in range(1, len(rest) + 1):
            out.update(combinations(rest, k))
    return out


def link(mesh: Mesh, simplex: Sequence[int], coned: bool = False) -> Set[Simplex]:
    """
    Simplices disjoint from ``simplex`` whose union with it is in the complex.

    With ``coned`` the boundary is treated as coned to the virtual vertex
    ``VIRTUAL_VERTEX``, which then shows up in links of boundary simplices.
    """
    s = mesh.require(simplex)
    return {Simplex(k) for k in _link_keys(mesh, tuple(s), coned)}


def link_condition(mesh: Mesh, edge: Sequence[int]) -> bool:
    """lk(a) ∩ lk(b) == lk(ab) on the boundary-coned complex."""
    e = mesh.require(edge)
    if e.dimension != 1:
        raise StructuralError("link condition is defined for edges", witness=tuple(e))
    a, b = e
    return (_link_keys(mesh, (a,), True) & _link_keys(mesh, (b,), True)) == _link_keys(mesh, (a, b), True)


def coned_copy(mesh: Mesh) -> Mesh:
    """Copy of the mesh with a real apex vertex coning off every boundary face."""
    out = mesh.copy()
    boundary = mesh.boundary_faces()
    if not boundary:
        return out
    apex = out._raw_add_vertex()
    for face in boundary:
        (fid,) = mesh.cofaces(face)
        ordered = tuple(v for v in mesh.facet(fid) if v in face)
        out._raw_add_facet(ordered + (apex,))
    out.apex = apex
    return out


# ----------------------------------------------------------------------
# Global counts
# ----------------------------------------------------------------------

def simplex_counts(mesh: Mesh) -> List[int]:
    """Number of simplices per dimension 0..d (isolated alive vertices included)."""
    counts = [0] * (mesh.dimension + 1)
    for key in mesh._index():
        counts[len(key) - 1] += 1
    counts[0] += len(mesh.isolated_vertices())
    return counts


def euler_characteristic(mesh: Mesh) -> int:
    return sum((-1) ** k * n for k, n in enumerate(simplex_counts(mesh)))


def component_labels(mesh: Mesh) -> Dict[int, int]:
    """Connected component label per vertex used by some alive facet."""
    used = sorted({v for _, f in mesh.facets() for v in f})
    if not used:
        return {}
    local = {v: i for i, v in enumerate(used)}
    rows: List[int] = []
    cols: List[int] = []
    for _, f in mesh.facets():
        for v in f[1:]:
            rows.append(local[f[0]])
            cols.append(local[v])
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(used), len(used)))
    _, labels = connected_components(graph, directed=False)
    return {v: int(labels[local[v]]) for v in used}


def count_components(mesh: Mesh) -> int:
    return len(set(component_labels(mesh).values()))
