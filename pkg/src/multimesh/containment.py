"""Containment maps between a child mesh and its parent, stored as anchors"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..errors import AnchorError, StaleHandleError
from ..mesh.dart import Dart, is_alive
from ..mesh.journal import Journal
from ..mesh.mesh import Mesh
from ..mesh.simplex import Simplex, closure, sorted_key


@dataclass(frozen=True)
class Anchor:
    """
    One stored correspondence per child facet.

    The first k+1 vertices of ``parent_dart`` are the images of the k+1
    vertices of ``child_dart`` in the same order, so slot j of the parent dart
    is the image of slot j of the child dart for every j <= k.
    """
    child_dart: Dart
    parent_dart: Dart


def switch_path_between(source: Sequence[int], target: Sequence[int]) -> List[int]:
    """
    Switch levels taking the ordering ``source`` to ``target`` within one facet.

    Each level j swaps positions j and j+1 (an adjacent transposition), which
    is exactly a switch below the facet level.
    """
    current = list(source)
    path: List[int] = []
    for i, v in enumerate(target):
        j = current.index(v)
        while j > i:
            current[j - 1], current[j] = current[j], current[j - 1]
            path.append(j - 1)
            j -= 1
    return path


def apply_local_switches(vertices: Sequence[int], path: Iterable[int]) -> Tuple[int, ...]:
    out = list(vertices)
    for j in path:
        out[j], out[j + 1] = out[j + 1], out[j]
    return tuple(out)


class ContainmentMap:
    """
    Face-preserving map from the child mesh into its parent.

    ``anchors`` holds one Anchor per alive child facet; every other
    correspondence is recovered from it by switch transport. ``back_refs``
    indexes, for each parent simplex in the image, the child facets whose
    image contains it, which makes preimage queries local.
    """

    def __init__(self, parent: Mesh, child: Mesh):
        self.parent = parent
        self.child = child
        self.parent_id: Optional[str] = None
        self.child_id: Optional[str] = None
        self.anchors: Dict[int, Anchor] = {}
        self.anchored_on: Dict[int, Set[int]] = {}
        self.back_refs: Dict[Tuple[int, ...], Set[int]] = {}
        self.journal: Optional[Journal] = None

    # ------------------------------------------------------------------
    # Anchor storage
    # ------------------------------------------------------------------

    def set_anchor(self, child_facet: int, anchor: Anchor) -> None:
        old = self.anchors.get(child_facet)
        if old is not None:
            self._unlink(child_facet, old)
        self._link(child_facet, anchor)

        def undo():
            self._unlink(child_facet, anchor)
            if old is not None:
                self._link(child_facet, old)
        self._record(undo)

    def remove_anchor(self, child_facet: int) -> None:
        old = self.anchors.get(child_facet)
        if old is None:
            return
        self._unlink(child_facet, old)
        self._record(lambda: self._link(child_facet, old))

    def anchor(self, child_facet: int) -> Anchor:
        try:
            return self.anchors[child_facet]
        except KeyError:
            raise AnchorError(f"child facet {child_facet} has no anchor", witness=child_facet) from None

    def anchors_on(self, parent_facets: Iterable[int]) -> Set[int]:
        out: Set[int] = set()
        for pf in parent_facets:
            out.update(self.anchored_on.get(pf, ()))
        return out

    def build_anchor(self, child_facet: int, vertex_map: Mapping[int, int]) -> Anchor:
        """
        Anchor for a child facet given its child -> parent vertex map.

        The child dart lists the facet's vertices in sorted order; the parent
        facet is the smallest alive facet containing the image.
        """
        ordering = tuple(sorted(self.child.facet(child_facet)))
        try:
            images = tuple(vertex_map[v] for v in ordering)
        except KeyError as exc:
            raise AnchorError(f"no image for child vertex {exc.args[0]}", witness=ordering) from None
        if len(set(images)) != len(images):
            raise AnchorError(f"child facet {child_facet} maps to a degenerate simplex {images}", witness=ordering)
        candidates = self.parent.cofaces(images)
        if not candidates:
            raise AnchorError(f"no parent facet contains {tuple(sorted(images))}", witness=tuple(sorted(images)))
        parent_facet = min(candidates)
        rest = tuple(sorted(set(self.parent.facet(parent_facet)) - set(images)))
        return Anchor(Dart(ordering, child_facet), Dart(images + rest, parent_facet))

    def is_valid_anchor(self, child_facet: int, anchor: Optional[Anchor] = None) -> bool:
        anchor = anchor or self.anchors.get(child_facet)
        if anchor is None:
            return False
        k = self.child.dimension
        return (anchor.child_dart.facet == child_facet
                and is_alive(self.child, anchor.child_dart)
                and is_alive(self.parent, anchor.parent_dart)
                and len(set(anchor.parent_dart.vertices[:k + 1])) == k + 1)

    # ------------------------------------------------------------------
    # Mapping
    # ------------------------------------------------------------------

    def facet_vertex_map(self, child_facet: int) -> Dict[int, int]:
        a = self.anchor(child_facet)
        return dict(zip(a.child_dart.vertices, a.parent_dart.vertices))

    def vertex_image(self, child_vertex: int) -> int:
        facets = self.child.vertex_facets(child_vertex)
        if not facets:
            raise StaleHandleError(f"child vertex {child_vertex} lies in no facet", witness=child_vertex)
        return self.facet_vertex_map(min(facets))[child_vertex]

    def map_simplex(self, simplex: Sequence[int]) -> Simplex:
        s = self.child.require(simplex)
        facets = self.child.cofaces(s)
        if not facets:
            raise StaleHandleError(f"{tuple(s)} lies in no child facet", witness=tuple(s))
        vm = self.facet_vertex_map(min(facets))
        return Simplex(vm[v] for v in s)

    def map_ordered(self, vertices: Sequence[int]) -> Tuple[int, ...]:
        """Image of an ordered simplex, keeping the order."""
        s = self.child.require(vertices)
        vm = self.facet_vertex_map(min(self.child.cofaces(s)))
        return tuple(vm[v] for v in vertices)

    def preimage(self, simplex: Sequence[int]) -> Set[Simplex]:
        """Child simplices whose image is ``simplex`` (possibly none)."""
        key = sorted_key(simplex)
        out: Set[Simplex] = set()
        for cf in self.back_refs.get(key, ()):
            inverse = {p: c for c, p in self.facet_vertex_map(cf).items()}
            out.add(Simplex(inverse[p] for p in key))
        return out

    def preimage_ordered(self, vertices: Sequence[int]) -> List[Tuple[int, ...]]:
        """Preimages of an ordered simplex, each listed in the matching order."""
        out = set()
        for cf in self.back_refs.get(sorted_key(vertices), ()):
            inverse = {p: c for c, p in self.facet_vertex_map(cf).items()}
            out.add(tuple(inverse[p] for p in vertices))
        return sorted(out)

    def transport(self, child_dart: Dart) -> Dart:
        """
        Parent dart of a child dart.

        Records the switches leading from ``child_dart`` to its facet's anchor
        and replays them in reverse from the parent anchor dart.
        """
        if not is_alive(self.child, child_dart):
            raise StaleHandleError(f"{child_dart!r} is not alive", witness=child_dart)
        anchor = self.anchor(child_dart.facet)
        path = switch_path_between(child_dart.vertices, anchor.child_dart.vertices)
        parent = anchor.parent_dart
        if not is_alive(self.parent, parent):
            raise AnchorError(f"anchor of child facet {child_dart.facet} is dangling", witness=child_dart.facet)
        return Dart(apply_local_switches(parent.vertices, reversed(path)), parent.facet)

    def pullback(self, parent_dart: Dart) -> List[Dart]:
        """Child darts whose transport agrees with ``parent_dart`` on slots 0..k."""
        k = self.child.dimension
        head = parent_dart.vertices[:k + 1]
        out: List[Dart] = []
        for cf in sorted(self.back_refs.get(sorted_key(head), ())):
            inverse = {p: c for c, p in self.facet_vertex_map(cf).items()}
            if all(p in inverse for p in head):
                out.append(Dart(tuple(inverse[p] for p in head), cf))
        return out

    # ------------------------------------------------------------------
    # Internals
    # ------------------------------------------------------------------

    def _record(self, undo) -> None:
        if self.journal is not None:
            self.journal.record(undo)

    def _link(self, child_facet: int, anchor: Anchor) -> None:
        self.anchors[child_facet] = anchor
        self.anchored_on.setdefault(anchor.parent_dart.facet, set()).add(child_facet)
        k = len(anchor.child_dart.vertices)
        for key in closure(anchor.parent_dart.vertices[:k]):
            self.back_refs.setdefault(key, set()).add(child_facet)

    def _unlink(self, child_facet: int, anchor: Anchor) -> None:
        del self.anchors[child_facet]
        bucket = self.anchored_on.get(anchor.parent_dart.facet)
        if bucket is not None:
            bucket.discard(child_facet)
            if not bucket:
                del self.anchored_on[anchor.parent_dart.facet]
        k = len(anchor.child_dart.vertices)
        for key in closure(anchor.parent_dart.vertices[:k]):
            refs = self.back_refs.get(key)
            if refs is not None:
                refs.discard(child_facet)
                if not refs:
                    del self.back_refs[key]

    def snapshot(self) -> Dict[int, Anchor]:
        return dict(self.anchors)

    def copy(self, parent: Mesh, child: Mesh) -> "ContainmentMap":
        other = ContainmentMap(parent, child)
        other.parent_id, other.child_id = self.parent_id, self.child_id
        for cf, a in self.anchors.items():
            other._link(cf, a)
        return other


def transport_anchor(cm: ContainmentMap, child_dart: Dart) -> Dart:
    return cm.transport(child_dart)
