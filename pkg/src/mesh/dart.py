"""Darts: nested simplex chains inside a facet, and the switch involution"""
from dataclasses import dataclass
from itertools import permutations
from typing import List, Sequence, Tuple

from ..errors import BoundaryError, StaleHandleError, StructuralError
from .mesh import Mesh
from .simplex import Simplex


@dataclass(frozen=True, order=True)
class Dart:
    """
    A dart is stored as an ordering of its facet's vertices.

    Slot ``j`` of the dart is the simplex spanned by the first ``j + 1``
    vertices, so the chain (vertex, edge, triangle, ...) is nested by
    construction. Orderings that differ only above the top slot do not occur
    because a dart always lists every vertex of its facet.
    """
    vertices: Tuple[int, ...]
    facet: int

    @property
    def level(self) -> int:
        return len(self.vertices) - 1

    def slot(self, j: int) -> Simplex:
        return Simplex(self.vertices[:j + 1])

    def slots(self) -> List[Simplex]:
        return [self.slot(j) for j in range(len(self.vertices))]

    def __repr__(self) -> str:
        return f"Dart(facet={self.facet}, vertices={self.vertices})"


def make_dart(mesh: Mesh, facet: int, vertices: Sequence[int]) -> Dart:
    dart = Dart(tuple(int(v) for v in vertices), facet)
    check_dart(mesh, dart)
    return dart


def is_alive(mesh: Mesh, dart: Dart) -> bool:
    return (mesh.is_facet_alive(dart.facet)
            and sorted(mesh.facet(dart.facet)) == sorted(dart.vertices))


def check_dart(mesh: Mesh, dart: Dart) -> None:
    if not is_alive(mesh, dart):
        raise StaleHandleError(f"{dart!r} does not match an alive facet", witness=dart)


def switch(mesh: Mesh, dart: Dart, level: int) -> Dart:
    """Return the unique other dart that differs from ``dart`` only in slot ``level``."""
    check_dart(mesh, dart)
    d = mesh.dimension
    if not 0 <= level <= d:
        raise StructuralError(f"switch level {level} outside [0, {d}]")
    verts = dart.vertices
    if level < d:
        swapped = list(verts)
        swapped[level], swapped[level + 1] = swapped[level + 1], swapped[level]
        return Dart(tuple(swapped), dart.facet)
    face = verts[:d]
    other = mesh.opposite_facet(dart.facet, face)
    if other is None:
        raise BoundaryError(f"switch across boundary face {tuple(sorted(face))}", witness=tuple(sorted(face)))
    (apex,) = set(mesh.facet(other)) - set(face)
    return Dart(tuple(face) + (apex,), other)


def switch_path(mesh: Mesh, dart: Dart, path: Sequence[int]) -> Dart:
    for level in path:
        dart = switch(mesh, dart, level)
    return dart


def darts_of(mesh: Mesh, simplex: Sequence[int]) -> List[Dart]:
    """Every dart holding ``simplex`` in slot dim(simplex), sorted."""
    s = mesh.require(simplex)
    out: List[Dart] = []
    for fid in sorted(mesh.cofaces(s)):
        rest = [v for v in mesh.facet(fid) if v not in s]
        for head in permutations(s):
            for tail in permutations(rest):
                out.append(Dart(head + tail, fid))
    out.sort()
    return out


def canonical_dart(mesh: Mesh, simplex: Sequence[int]) -> Dart:
    """Lexicographically smallest dart of a simplex."""
    s = mesh.require(simplex)
    candidates = [(tuple(sorted(v for v in mesh.facet(fid) if v not in s)), fid) for fid in mesh.cofaces(s)]
    if not candidates:
        raise StaleHandleError(f"{tuple(s)} lies in no facet", witness=tuple(s))
    rest, fid = min(candidates)
    return Dart(tuple(s) + rest, fid)


def facet_dart(mesh: Mesh, fid: int) -> Dart:
    """Canonical dart of a facet: its vertices in sorted order."""
    return Dart(tuple(sorted(mesh.facet(fid))), fid)
