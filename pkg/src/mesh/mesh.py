"""Indexed simplicial mesh with tombstoned facets and journaled mutation"""
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..errors import StaleHandleError, StructuralError
from .attributes import Attribute
from .journal import Journal
from .simplex import MAX_DIMENSION, Simplex, closure, sorted_key

POSITION = "position"


class Mesh:
    """
    A pure simplicial complex of fixed dimension stored as an indexed facet list.

    Facets are ordered vertex tuples; the ordering is the facet orientation and
    the sorted tuple is its identity as a simplex. Facet and vertex ids are
    append-only: deletion leaves a tombstone and ids are never handed out again.

    Lower-dimensional simplices exist implicitly as faces of alive facets. A
    coface index keyed by sorted vertex tuples is built on first use and then
    maintained incrementally by every mutator.

    Mutators record undo closures on ``journal`` when one is attached, which is
    how operations and multimesh transactions roll back.
    """

    def __init__(self, dimension: int):
        if not 0 <= dimension <= MAX_DIMENSION:
            raise StructuralError(f"unsupported mesh dimension {dimension}")
        self.dimension = dimension
        self._facets: List[Optional[Tuple[int, ...]]] = []
        self._vertex_alive: List[bool] = []
        self.vertex_stamp: List[int] = []
        self.vertex_attributes: Dict[str, Attribute] = {}
        self.facet_attributes: Dict[str, Attribute] = {}
        # Declared simplices that are not (necessarily) faces of a facet
        self.loose: Set[Tuple[int, ...]] = set()
        self.generation = 0
        self.journal: Optional[Journal] = None
        # Vertex id of a realised cone apex (see topology.coned_copy)
        self.apex: Optional[int] = None
        self._clock = 0
        self._cofaces: Optional[Dict[Tuple[int, ...], Set[int]]] = None

    @classmethod
    def from_facets(cls, dimension: int, facets: Iterable[Sequence[int]],
                    vertex_count: Optional[int] = None,
                    positions: Optional[Any] = None,
                    loose: Iterable[Sequence[int]] = ()) -> "Mesh":
        facets = [tuple(int(v) for v in f) for f in facets]
        loose = [tuple(int(v) for v in s) for s in loose]
        referenced = [v for f in facets for v in f] + [v for s in loose for v in s]
        if vertex_count is None:
            vertex_count = max(referenced) + 1 if referenced else 0
            if positions is not None:
                vertex_count = max(vertex_count, len(positions))
        mesh = cls(dimension)
        for _ in range(vertex_count):
            mesh._raw_add_vertex()
        if positions is not None:
            positions = np.asarray(positions, dtype=np.float64)
            if positions.ndim != 2 or len(positions) != vertex_count:
                raise StructuralError(
                    f"position array has shape {positions.shape}, expected {vertex_count} rows")
            mesh.add_vertex_attribute(POSITION, positions.shape[1], values=positions)
        for f in facets:
            mesh._check_facet(f)
            mesh._raw_add_facet(f)
        for s in loose:
            simplex = Simplex(s)
            if simplex.dimension >= dimension:
                raise StructuralError("loose simplices must be lower-dimensional", witness=tuple(simplex))
            for v in simplex:
                mesh._check_vertex(v)
            mesh.loose.add(tuple(simplex))
        return mesh

    @classmethod
    def restore(cls, dimension: int, facets: Sequence[Optional[Sequence[int]]],
                vertex_alive: Sequence[bool], generation: int = 0) -> "Mesh":
        """Rebuild a mesh with its tombstones; ``None`` marks a deleted facet id."""
        mesh = cls(dimension)
        for alive in vertex_alive:
            mesh._raw_add_vertex()
            mesh._vertex_alive[-1] = bool(alive)
        for f in facets:
            if f is None:
                mesh._facets.append(None)
                continue
            ordered = tuple(int(v) for v in f)
            mesh._check_facet(ordered)
            mesh._raw_add_facet(ordered)
        mesh.generation = int(generation)
        return mesh

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        """Number of vertex ids ever allocated (alive or not)."""
        return len(self._vertex_alive)

    @property
    def facet_capacity(self) -> int:
        return len(self._facets)

    @property
    def num_vertices(self) -> int:
        return sum(self._vertex_alive)

    @property
    def num_facets(self) -> int:
        return sum(1 for f in self._facets if f is not None)

    def is_empty(self) -> bool:
        return self.num_facets == 0

    def is_vertex_alive(self, v: int) -> bool:
        return 0 <= v < len(self._vertex_alive) and self._vertex_alive[v]

    def is_facet_alive(self, fid: int) -> bool:
        return 0 <= fid < len(self._facets) and self._facets[fid] is not None

    def vertices(self) -> List[int]:
        return [v for v, alive in enumerate(self._vertex_alive) if alive]

    def facet_ids(self) -> List[int]:
        return [fid for fid, f in enumerate(self._facets) if f is not None]

    def facets(self) -> List[Tuple[int, Tuple[int, ...]]]:
        return [(fid, f) for fid, f in enumerate(self._facets) if f is not None]

    def facet(self, fid: int) -> Tuple[int, ...]:
        """Ordered vertex tuple of an alive facet."""
        if not self.is_facet_alive(fid):
            raise StaleHandleError(f"facet {fid} is not alive", witness=fid)
        return self._facets[fid]

    def facet_simplex(self, fid: int) -> Simplex:
        return Simplex(self.facet(fid))

    def cofaces(self, simplex: Sequence[int]) -> FrozenSet[int]:
        """Ids of the alive facets containing ``simplex``."""
        index = self._index()
        return frozenset(index.get(sorted_key(simplex), ()))

    def has_simplex(self, simplex: Sequence[int]) -> bool:
        key = sorted_key(simplex)
        if key in self._index():
            return True
        return len(key) == 1 and self.is_vertex_alive(key[0])

    def require(self, simplex: Sequence[int]) -> Simplex:
        """Canonical form of an alive simplex, or StaleHandleError."""
        s = Simplex(simplex)
        if not self.has_simplex(s):
            raise StaleHandleError(f"{tuple(s)} is not a simplex of the mesh", witness=tuple(s))
        return s

    def simplices(self, dimension: int) -> List[Simplex]:
        """All simplices of the given dimension that are faces of alive facets."""
        return sorted(Simplex(key) for key in self._index() if len(key) == dimension + 1)

    def edges(self) -> List[Simplex]:
        return self.simplices(1)

    def vertex_facets(self, v: int) -> FrozenSet[int]:
        return self.cofaces((v,))

    def vertex_neighbors(self, v: int) -> Set[int]:
        out: Set[int] = set()
        for fid in self.vertex_facets(v):
            out.update(self._facets[fid])
        out.discard(v)
        return out

    def isolated_vertices(self) -> List[int]:
        index = self._index()
        return [v for v in self.vertices() if (v,) not in index]

    def boundary_faces(self) -> List[Simplex]:
        if self.dimension == 0:
            return []
        return [s for s in self.simplices(self.dimension - 1) if len(self._index()[s]) == 1]

    def is_boundary(self, simplex: Sequence[int]) -> bool:
        """True if the simplex lies in some boundary (d-1)-face."""
        if self.dimension == 0:
            return False
        key = set(simplex)
        for fid in self.cofaces(simplex):
            f = self._facets[fid]
            for dropped in f:
                if dropped in key:
                    continue
                face = tuple(sorted(v for v in f if v != dropped))
                if len(self._index()[face]) == 1:
                    return True
        return False

    def opposite_facet(self, fid: int, face: Sequence[int]) -> Optional[int]:
        """The other facet sharing the (d-1)-face, None on the boundary."""
        others = self.cofaces(face) - {fid}
        return min(others) if others else None

    # ------------------------------------------------------------------
    # Attributes
    # ------------------------------------------------------------------

    def add_vertex_attribute(self, name: str, width: int, dtype: Any = np.float64,
                             values: Optional[Any] = None, default: Optional[Any] = None) -> Attribute:
        attr = Attribute(width, dtype, default)
        for v in range(self.vertex_count):
            attr.append(None if values is None else values[v])
        self.vertex_attributes[name] = attr
        return attr

    def add_facet_attribute(self, name: str, width: int, dtype: Any = np.float64,
                            values: Optional[Any] = None, default: Optional[Any] = None) -> Attribute:
        attr = Attribute(width, dtype, default)
        for fid in range(self.facet_capacity):
            attr.append(None if values is None else values[fid])
        self.facet_attributes[name] = attr
        return attr

    def has_vertex_attribute(self, name: str) -> bool:
        return name in self.vertex_attributes

    def vertex_attribute(self, name: str) -> Attribute:
        if name not in self.vertex_attributes:
            raise StructuralError(f"mesh has no vertex attribute '{name}'")
        return self.vertex_attributes[name]

    def vertex_value(self, name: str, v: int) -> np.ndarray:
        return self.vertex_attribute(name)[v]

    def vertex_record(self, v: int) -> Dict[str, np.ndarray]:
        """All attribute values of one vertex, keyed by attribute name."""
        return {name: attr[v] for name, attr in self.vertex_attributes.items()}

    def facet_record(self, fid: int) -> Dict[str, np.ndarray]:
        return {name: attr[fid] for name, attr in self.facet_attributes.items()}

    def positions(self) -> np.ndarray:
        return self.vertex_attribute(POSITION).values

    # ------------------------------------------------------------------
    # Journaled mutation
    # ------------------------------------------------------------------

    def add_vertex(self, values: Optional[Dict[str, Any]] = None) -> int:
        v = self._raw_add_vertex(values)
        self._record(lambda: self._raw_pop_vertex(v))
        return v

    def remove_vertex(self, v: int) -> None:
        self._check_vertex(v)
        self._vertex_alive[v] = False
        self._record(lambda: self._vertex_alive.__setitem__(v, True))

    def add_facet(self, ordered: Sequence[int], values: Optional[Dict[str, Any]] = None) -> int:
        ordered = tuple(int(v) for v in ordered)
        self._check_facet(ordered)
        fid = self._raw_add_facet(ordered, values)
        self._record(lambda: self._raw_pop_facet(fid))
        return fid

    def remove_facet(self, fid: int) -> Tuple[int, ...]:
        old = self.facet(fid)
        self._unindex(fid, old)
        self._facets[fid] = None

        def undo():
            self._facets[fid] = old
            self._reindex(fid, old)
        self._record(undo)
        return old

    def rename_in_facet(self, fid: int, old_vertex: int, new_vertex: int) -> Tuple[int, ...]:
        """Replace one vertex of a facet in place, keeping its slot."""
        before = self.facet(fid)
        if old_vertex not in before:
            raise StructuralError(f"vertex {old_vertex} not in facet {fid}", witness=before)
        after = tuple(new_vertex if v == old_vertex else v for v in before)
        self._check_facet(after)
        self._unindex(fid, before)
        self._facets[fid] = after
        self._reindex(fid, after)

        def undo():
            self._unindex(fid, after)
            self._facets[fid] = before
            self._reindex(fid, before)
        self._record(undo)
        return after

    def set_vertex_value(self, name: str, v: int, value: Any) -> None:
        attr = self.vertex_attribute(name)
        old = attr[v]
        attr[v] = value
        self._record(lambda: attr.__setitem__(v, old))
        self.touch(v)

    def set_facet_value(self, name: str, fid: int, value: Any) -> None:
        attr = self.facet_attributes[name]
        old = attr[fid]
        attr[fid] = value
        self._record(lambda: attr.__setitem__(fid, old))

    def touch(self, v: int) -> None:
        """Give a vertex a fresh stamp so queued work around it goes stale."""
        old_stamp, old_clock = self.vertex_stamp[v], self._clock
        self._clock += 1
        self.vertex_stamp[v] = self._clock

        def undo():
            self.vertex_stamp[v] = old_stamp
            self._clock = old_clock
        self._record(undo)

    def bump_generation(self) -> int:
        self.generation += 1
        self._record(self._decrement_generation)
        return self.generation

    def _decrement_generation(self) -> None:
        self.generation -= 1

    # ------------------------------------------------------------------
    # Copy / compare
    # ------------------------------------------------------------------

    def copy(self) -> "Mesh":
        other = Mesh(self.dimension)
        other._facets = list(self._facets)
        other._vertex_alive = list(self._vertex_alive)
        other.vertex_stamp = list(self.vertex_stamp)
        other.vertex_attributes = {n: a.copy() for n, a in self.vertex_attributes.items()}
        other.facet_attributes = {n: a.copy() for n, a in self.facet_attributes.items()}
        other.loose = set(self.loose)
        other.generation = self.generation
        other.apex = self.apex
        other._clock = self._clock
        return other

    def snapshot(self) -> Dict[str, Any]:
        """Plain-data image of connectivity and attributes for equality checks."""
        return {
            "dimension": self.dimension,
            "facets": tuple(self._facets),
            "vertex_alive": tuple(self._vertex_alive),
            "vertex_attributes": {n: a.values.tobytes() for n, a in sorted(self.vertex_attributes.items())},
            "facet_attributes": {n: a.values.tobytes() for n, a in sorted(self.facet_attributes.items())},
            "generation": self.generation,
        }

    def summary(self) -> Dict[str, int]:
        return {
            "dimension": self.dimension,
            "vertices": self.num_vertices,
            "facets": self.num_facets,
        }

    def __repr__(self) -> str:
        return f"Mesh(dimension={self.dimension}, vertices={self.num_vertices}, facets={self.num_facets})"

    # ------------------------------------------------------------------
    # Internals (not journaled)
    # ------------------------------------------------------------------

    def _record(self, undo) -> None:
        if self.journal is not None:
            self.journal.record(undo)

    def _check_vertex(self, v: int) -> None:
        if not self.is_vertex_alive(v):
            raise StructuralError(f"unknown or deleted vertex {v}", witness=v)

    def _check_facet(self, ordered: Tuple[int, ...]) -> None:
        if len(ordered) != self.dimension + 1:
            raise StructuralError(
                f"facet {ordered} has {len(ordered)} vertices, expected {self.dimension + 1}", witness=ordered)
        Simplex(ordered)
        for v in ordered:
            self._check_vertex(v)

    def _raw_add_vertex(self, values: Optional[Dict[str, Any]] = None) -> int:
        values = values or {}
        self._vertex_alive.append(True)
        self.vertex_stamp.append(0)
        for name, attr in self.vertex_attributes.items():
            attr.append(values.get(name))
        return len(self._vertex_alive) - 1

    def _raw_pop_vertex(self, v: int) -> None:
        del self._vertex_alive[v:]
        del self.vertex_stamp[v:]
        for attr in self.vertex_attributes.values():
            attr.truncate(v)

    def _raw_add_facet(self, ordered: Tuple[int, ...], values: Optional[Dict[str, Any]] = None) -> int:
        values = values or {}
        self._facets.append(ordered)
        fid = len(self._facets) - 1
        for name, attr in self.facet_attributes.items():
            attr.append(values.get(name))
        self._reindex(fid, ordered)
        return fid

    def _raw_pop_facet(self, fid: int) -> None:
        for i in range(len(self._facets) - 1, fid - 1, -1):
            if self._facets[i] is not None:
                self._unindex(i, self._facets[i])
        del self._facets[fid:]
        for attr in self.facet_attributes.values():
            attr.truncate(fid)

    def _index(self) -> Dict[Tuple[int, ...], Set[int]]:
        if self._cofaces is None:
            index: Dict[Tuple[int, ...], Set[int]] = {}
            for fid, f in enumerate(self._facets):
                if f is not None:
                    for key in closure(f):
                        index.setdefault(key, set()).add(fid)
            self._cofaces = index
        return self._cofaces

    def _reindex(self, fid: int, ordered: Tuple[int, ...]) -> None:
        if self._cofaces is None:
            return
        for key in closure(ordered):
            self._cofaces.setdefault(key, set()).add(fid)

    def _unindex(self, fid: int, ordered: Tuple[int, ...]) -> None:
        if self._cofaces is None:
            return
        for key in closure(ordered):
            bucket = self._cofaces.get(key)
            if bucket is not None:
                bucket.discard(fid)
                if not bucket:
                    del self._cofaces[key]
