"""The multimesh tree: nodes, containment maps, mapping and transactions"""
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set

from ..errors import StaleHandleError, TreeError
from ..mesh.journal import Journal
from ..mesh.mesh import Mesh
from ..mesh.simplex import Simplex
from .containment import ContainmentMap


class MultiMesh:
    """
    A tree of meshes linked by containment maps.

    Node ids are strings. The root is the unique parentless node and every
    child has dimension at most its parent's. ``maps`` is keyed by child id.
    """

    def __init__(self, root: Mesh, root_id: str = "root"):
        self.nodes: Dict[str, Mesh] = {root_id: root}
        self.parent: Dict[str, Optional[str]] = {root_id: None}
        self.maps: Dict[str, ContainmentMap] = {}
        self.root_id = root_id
        self.generation = 0
        self.journal: Optional[Journal] = None
        # Registered scheduling.invariants.Invariant objects
        self.invariants: List[Any] = []

    # ------------------------------------------------------------------
    # Tree structure
    # ------------------------------------------------------------------

    @property
    def root(self) -> Mesh:
        return self.nodes[self.root_id]

    def mesh(self, node: str) -> Mesh:
        if node not in self.nodes:
            raise TreeError(f"unknown node '{node}'", witness=node)
        return self.nodes[node]

    def add_child(self, parent_id: str, child_id: str, cmap: ContainmentMap) -> None:
        if parent_id not in self.nodes:
            raise TreeError(f"unknown parent node '{parent_id}'", witness=parent_id)
        if child_id in self.nodes:
            raise TreeError(f"node '{child_id}' already exists", witness=child_id)
        if cmap.parent is not self.nodes[parent_id]:
            raise TreeError(f"containment map does not target node '{parent_id}'", witness=child_id)
        if cmap.child.dimension > cmap.parent.dimension:
            raise TreeError(
                f"child dimension {cmap.child.dimension} exceeds parent dimension {cmap.parent.dimension}",
                witness=child_id)
        cmap.parent_id, cmap.child_id = parent_id, child_id
        self.nodes[child_id] = cmap.child
        self.parent[child_id] = parent_id
        self.maps[child_id] = cmap
        if self.journal is not None:
            cmap.child.journal = self.journal
            cmap.journal = self.journal

    def children(self, node: str) -> List[str]:
        return sorted(n for n, p in self.parent.items() if p == node)

    def preorder(self, start: Optional[str] = None) -> List[str]:
        out: List[str] = []
        stack = [start or self.root_id]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(self.children(node)))
        return out

    def ancestors(self, node: str) -> List[str]:
        """Path from ``node`` (inclusive) up to the root."""
        self.mesh(node)
        path = [node]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def depth(self, node: str) -> int:
        return len(self.ancestors(node)) - 1

    def is_ancestor(self, ancestor: str, node: str) -> bool:
        return ancestor in self.ancestors(node)

    def lowest_common_ancestor(self, a: str, b: str) -> str:
        up = set(self.ancestors(a))
        for n in self.ancestors(b):
            if n in up:
                return n
        raise TreeError(f"nodes '{a}' and '{b}' share no ancestor")

    # ------------------------------------------------------------------
    # Mapping between nodes
    # ------------------------------------------------------------------

    def map_up(self, node: str, simplex: Sequence[int], target: Optional[str] = None) -> Simplex:
        """Composed containment image of ``simplex`` in an ancestor (the root by default)."""
        target = target or self.root_id
        path = self.ancestors(node)
        if target not in path:
            raise TreeError(f"'{target}' is not an ancestor of '{node}'", witness=target)
        current = self.nodes[node].require(simplex)
        for n in path[:path.index(target)]:
            current = self.maps[n].map_simplex(current)
        return current

    def map_up_ordered(self, node: str, vertices: Sequence[int], target: Optional[str] = None) -> tuple:
        target = target or self.root_id
        path = self.ancestors(node)
        if target not in path:
            raise TreeError(f"'{target}' is not an ancestor of '{node}'", witness=target)
        current = tuple(int(v) for v in vertices)
        self.nodes[node].require(current)
        for n in path[:path.index(target)]:
            current = self.maps[n].map_ordered(current)
        return current

    def map_down(self, node: str, simplex: Sequence[int], target: str) -> Set[Simplex]:
        """All simplices of a descendant whose composed image is ``simplex``."""
        path = self.ancestors(target)
        if node not in path:
            raise TreeError(f"'{target}' is not a descendant of '{node}'", witness=target)
        if not self.nodes[node].has_simplex(simplex):
            raise StaleHandleError(f"{tuple(simplex)} is not alive in '{node}'", witness=tuple(simplex))
        current = {Simplex(simplex)}
        for n in reversed(path[:path.index(node)]):
            nxt: Set[Simplex] = set()
            for s in current:
                nxt.update(self.maps[n].preimage(s))
            current = nxt
        return current

    def map_between(self, src: str, simplex: Sequence[int], dst: str) -> Set[Simplex]:
        """Map through the lowest common ancestor of ``src`` and ``dst``."""
        if src == dst:
            return {self.nodes[src].require(simplex)}
        lca = self.lowest_common_ancestor(src, dst)
        return self.map_down(lca, self.map_up(src, simplex, lca), dst)

    # ------------------------------------------------------------------
    # Transactions
    # ------------------------------------------------------------------

    @contextmanager
    def transaction(self) -> Iterator[Journal]:
        """
        Group mutations of every node and map; an exception undoes all of them.

        Transactions nest: an inner failure unwinds only to the inner start.
        """
        outer = self.journal is None
        if outer:
            self._attach(Journal())
        journal = self.journal
        mark = journal.mark()
        try:
            yield journal
        except BaseException:
            journal.unwind_to(mark)
            raise
        finally:
            if outer:
                self._attach(None)

    def bump_generation(self) -> int:
        self.generation += 1
        if self.journal is not None:
            self.journal.record(self._decrement_generation)
        return self.generation

    def _decrement_generation(self) -> None:
        self.generation -= 1

    def _attach(self, journal: Optional[Journal]) -> None:
        self.journal = journal
        for mesh in self.nodes.values():
            mesh.journal = journal
        for cm in self.maps.values():
            cm.journal = journal

    # ------------------------------------------------------------------
    # Shared attributes
    # ------------------------------------------------------------------

    def set_vertex_attribute(self, node: str, vertex: int, name: str, value: Any) -> List[tuple]:
        """
        Write a vertex attribute on every node that carries it, following the maps.

        The value goes to the root vertex and to all of its preimages. Returns
        the (node, vertex) pairs written.
        """
        (root_vertex,) = self.map_up(node, (vertex,))
        written = []
        for n in self.preorder():
            mesh = self.nodes[n]
            if not mesh.has_vertex_attribute(name):
                continue
            targets = [(root_vertex,)] if n == self.root_id else self.map_down(self.root_id, (root_vertex,), n)
            for (v,) in sorted(targets):
                mesh.set_vertex_value(name, v, value)
                written.append((n, v))
        return written

    # ------------------------------------------------------------------
    # Copy / compare
    # ------------------------------------------------------------------

    def copy(self) -> "MultiMesh":
        meshes = {n: m.copy() for n, m in self.nodes.items()}
        other = MultiMesh(meshes[self.root_id], self.root_id)
        other.nodes = meshes
        other.parent = dict(self.parent)
        other.maps = {c: cm.copy(meshes[self.parent[c]], meshes[c]) for c, cm in self.maps.items()}
        other.generation = self.generation
        other.invariants = list(self.invariants)
        return other

    def snapshot(self) -> Dict[str, Any]:
        return {
            "generation": self.generation,
            "nodes": {n: m.snapshot() for n, m in sorted(self.nodes.items())},
            "anchors": {c: cm.snapshot() for c, cm in sorted(self.maps.items())},
        }

    def summary(self) -> Dict[str, Any]:
        return {n: {**self.nodes[n].summary(), "parent": self.parent[n]} for n in self.preorder()}

    def __repr__(self) -> str:
        return f"MultiMesh(nodes={self.preorder()}, generation={self.generation})"
