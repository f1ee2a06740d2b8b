"""Simplices as canonical (sorted) vertex tuples"""
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

from ..errors import StructuralError

MAX_DIMENSION = 3

# Apex of the cone over the boundary, used by the boundary-amended link condition
VIRTUAL_VERTEX = -1


class Simplex(tuple):
    """
    A set of vertices stored in sorted order.

    Equality and hashing are those of the underlying tuple, so a Simplex and a
    plain sorted tuple with the same vertices are interchangeable as dict keys.
    """
    __slots__ = ()

    def __new__(cls, vertices: Iterable[int]) -> "Simplex":
        verts = tuple(sorted(int(v) for v in vertices))
        if not verts:
            raise StructuralError("a simplex needs at least one vertex")
        if len(verts) > MAX_DIMENSION + 2:
            raise StructuralError(f"dimension {len(verts) - 1} exceeds the supported maximum", witness=verts)
        for i in range(1, len(verts)):
            if verts[i] == verts[i - 1]:
                raise StructuralError("repeated vertex in simplex", witness=verts)
        return super().__new__(cls, verts)

    @property
    def dimension(self) -> int:
        return len(self) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(self)

    def faces(self) -> List["Simplex"]:
        """All nonempty proper faces, lowest dimension first."""
        return [Simplex(c) for k in range(1, len(self)) for c in combinations(self, k)]

    def opposite(self, vertex: int) -> "Simplex":
        return Simplex(v for v in self if v != vertex)

    def __repr__(self) -> str:
        return f"Simplex{tuple(self)}"


def sorted_key(vertices: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(vertices))


def closure(vertices: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Sorted tuples of every nonempty face of a simplex, including itself."""
    verts = sorted(vertices)
    for k in range(1, len(verts) + 1):
        yield from combinations(verts, k)


def oriented_face(ordered: Sequence[int], dropped: int) -> Tuple[int, ...]:
    """
    Induced boundary orientation of the face opposite ``dropped``.

    For a positively oriented facet this lists the face so that its normal points
    away from the dropped vertex (outward for boundary faces).
    """
    i = list(ordered).index(dropped)
    rest = [v for v in ordered if v != dropped]
    if i % 2 == 1 and len(rest) >= 2:
        rest[0], rest[1] = rest[1], rest[0]
    return tuple(rest)
