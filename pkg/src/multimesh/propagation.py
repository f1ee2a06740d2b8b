"""Propagating local operations through every node of a multimesh"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .. import config
from ..errors import (
    AnchorError,
    BoundaryError,
    InvariantViolation,
    LinkConditionError,
    OperationRejected,
    StructuralError,
)
from ..mesh.topology import validate
from ..operations.collapse import edge_collapse
from ..operations.records import OperationKind, OperationRecord
from ..operations.rollback import Rollback
from ..operations.split import edge_split
from ..operations.swap import swap_candidates
from ..scheduling.invariants import Invariant, Phase, failed_invariants
from .containment import ContainmentMap
from .link import multimesh_link_condition
from .multimesh import MultiMesh

# child facet id -> (child vertex -> parent vertex), taken before mutation
Captured = Dict[int, Dict[int, int]]


@dataclass
class PropagationResult:
    """Per-node operation records of one propagated operation."""
    kind: OperationKind
    node: str
    edge: Tuple[int, int]
    root_edge: Tuple[int, int]
    records: Dict[str, List[OperationRecord]] = field(default_factory=dict)
    rollback: Optional[Rollback] = None
    survivor: Optional[int] = None

    def new_vertex(self, node: str, edge: Sequence[int]) -> Optional[int]:
        """Vertex created in ``node`` by splitting ``edge`` (either orientation)."""
        key = set(edge)
        for rec in self.records.get(node, []):
            if rec.kind == OperationKind.SPLIT and set(rec.edge) == key:
                return rec.new_vertex
        return None

    def touched(self) -> Dict[str, Set[int]]:
        """Alive facets whose connectivity changed, per node with records."""
        out: Dict[str, Set[int]] = {}
        for node, recs in self.records.items():
            if recs:
                out[node] = {f for rec in recs for f in rec.touched_facets}
        return out

    def touched_vertices(self, node: str) -> Set[int]:
        return {v for rec in self.records.get(node, []) for v in rec.touched_vertices}

    @property
    def operation_count(self) -> int:
        return sum(len(r) for r in self.records.values())


def compose_correspondence(records: Sequence[OperationRecord]) -> Dict[int, int]:
    """Removed vertex -> final survivor over a sequence of collapses."""
    corr: Dict[int, int] = {}
    for rec in records:
        if rec.kind != OperationKind.COLLAPSE:
            continue
        r, s = rec.removed_vertex, rec.survivor
        for k, v in corr.items():
            if v == r:
                corr[k] = s
        corr[r] = s
    return corr


def update_anchors_for(cm: ContainmentMap, captured: Captured, child_records: Sequence[OperationRecord],
                       parent_records: Sequence[OperationRecord], new_images: Mapping[int, int]) -> None:
    """
    Re-seat the anchors of every child facet the operation touched.

    ``captured`` holds the pre-operation vertex maps of all child facets that
    were anchored on a changed parent facet or changed themselves. Each
    surviving or created child facet gets the old map composed with the
    parent's vertex correspondence; new child vertices map to the parent
    vertices in ``new_images``. The parent facet is chosen afresh, which
    re-seats anchors whose parent facet was deleted.
    """
    child = cm.child
    child_corr = compose_correspondence(child_records)
    parent_corr = compose_correspondence(parent_records)
    source: Dict[int, int] = {}
    for rec in child_records:
        for old, pair in rec.split_pairs.items():
            for created in pair:
                source[created] = source.get(old, old)
    for cf in sorted(set(captured) | set(source)):
        if not child.is_facet_alive(cf):
            cm.remove_anchor(cf)
            continue
        src = source.get(cf, cf)
        if src not in captured:
            raise AnchorError(f"no pre-operation map for child facet {src}", witness=src)
        old_map = captured[src]
        current = child.facet(cf)
        vertex_map: Dict[int, int] = {}
        for v in current:
            if v in new_images:
                vertex_map[v] = new_images[v]
            elif v in old_map:
                vertex_map[v] = parent_corr.get(old_map[v], old_map[v])
            else:
                renamed = sorted(u for u in old_map if u not in current and child_corr.get(u) == v)
                if not renamed:
                    raise AnchorError(f"cannot trace child vertex {v} of facet {cf}", witness=cf)
                p = old_map[renamed[0]]
                vertex_map[v] = parent_corr.get(p, p)
        cm.set_anchor(cf, cm.build_anchor(cf, vertex_map))


def _finish(mm: MultiMesh, result: PropagationResult, check_after: bool, extra: Sequence[Invariant]) -> None:
    if check_after:
        failed = failed_invariants(mm, result.touched(), Phase.AFTER, extra)
        if failed:
            raise InvariantViolation(
                f"invariant '{failed[0].name}' fails on node '{failed[0].scope_node}'",
                witness=failed[0].name)
    if config.DEBUG_CHECKS:
        from .diagnostics import check_consistency
        for node, mesh in mm.nodes.items():
            report = validate(mesh)
            if not report.is_valid:
                raise StructuralError(f"node '{node}' invalid after {result.kind.value}: {report.lines()[0]}",
                                      witness=node)
        issues = check_consistency(mm)
        if issues.issues:
            raise AnchorError(f"containment maps inconsistent: {issues.issues[0].detail}", witness=issues.issues[0].node)
    mm.bump_generation()


def _check_before(mm: MultiMesh, extra: Sequence[Invariant]) -> None:
    failed = failed_invariants(mm, None, Phase.BEFORE, extra)
    if failed:
        raise InvariantViolation(f"invariant '{failed[0].name}' fails before the operation", witness=failed[0].name)


def propagate_split(mm: MultiMesh, node: str, edge: Sequence[int], t: float = 0.5,
                    check_after: bool = True, invariants: Sequence[Invariant] = ()) -> PropagationResult:
    """
    Split an edge of any node and keep every node and map consistent.

    The edge is mapped to the root and split there; every node then splits all
    preimages of its parent's split edges, and anchors are rebuilt. An
    exception (failed invariant, broken anchor) undoes everything.
    """
    a, b = int(edge[0]), int(edge[1])
    mm.mesh(node).require((a, b))
    root_edge = mm.map_up_ordered(node, (a, b))
    _check_before(mm, invariants)

    order = mm.preorder()
    plan: Dict[str, List[Tuple[Tuple[int, int], int]]] = {mm.root_id: [(root_edge, -1)]}
    captured: Dict[str, Captured] = {}
    for n in order[1:]:
        p, cm = mm.parent[n], mm.maps[n]
        parent_mesh = mm.nodes[p]
        plan[n] = [(pre, i) for i, (pe, _) in enumerate(plan[p]) for pre in cm.preimage_ordered(pe)]
        deleted = {f for pe, _ in plan[p] for f in parent_mesh.cofaces(pe)}
        captured[n] = {cf: cm.facet_vertex_map(cf) for cf in cm.anchors_on(deleted)}

    with mm.transaction() as journal:
        mark = journal.mark()
        result = PropagationResult(OperationKind.SPLIT, node, (a, b), tuple(root_edge))
        new_images: Dict[str, Dict[int, int]] = {}
        for n in order:
            mesh = mm.nodes[n]
            recs = []
            new_images[n] = {}
            for e, source in plan[n]:
                rec = edge_split(mesh, e, t=t)
                recs.append(rec)
                if source >= 0:
                    new_images[n][rec.new_vertex] = result.records[mm.parent[n]][source].new_vertex
            result.records[n] = recs
        for n in order[1:]:
            update_anchors_for(mm.maps[n], captured[n], result.records[n], result.records[mm.parent[n]],
                               new_images[n])
        _finish(mm, result, check_after, invariants)
        result.rollback = Rollback(journal, mark, mm.generation)
    return result


def _restrict_collapse(mesh, captured: Captured, parent_records: Sequence[OperationRecord],
                       t: float) -> List[OperationRecord]:
    """
    Collapse every child edge whose endpoints now map to one parent vertex.

    Preimages of the parent's collapsed edges go first and use the same
    interpolation parameter; edges that only became degenerate through the
    merge (seam tips) follow with the survivor unchanged.
    """
    parent_corr = compose_correspondence(parent_records)
    collapsed_pairs = {frozenset(rec.edge) for rec in parent_records if rec.kind == OperationKind.COLLAPSE}
    old_image: Dict[int, int] = {}
    for vm in captured.values():
        old_image.update(vm)
    records: List[OperationRecord] = []
    while True:
        groups: Dict[int, List[int]] = {}
        for c in sorted(old_image):
            if mesh.is_vertex_alive(c):
                p = old_image[c]
                groups.setdefault(parent_corr.get(p, p), []).append(c)
        candidates = []
        for members in groups.values():
            for i, u in enumerate(members):
                for w in members[i + 1:]:
                    if mesh.has_simplex((u, w)):
                        primary = frozenset((old_image[u], old_image[w])) in collapsed_pairs
                        candidates.append((0 if primary else 1, u, w))
        if not candidates:
            return records
        rank, u, w = min(candidates)
        u_kept = old_image[u] not in parent_corr
        w_kept = old_image[w] not in parent_corr
        keep, other = (w, u) if (w_kept and not u_kept) else (u, w)
        records.append(edge_collapse(mesh, (keep, other), keep=keep, t=t if rank == 0 else 0.0))


def propagate_collapse(mm: MultiMesh, node: str, edge: Sequence[int], keep: Optional[int] = None,
                       t: float = 0.0, check_link: bool = True, check_after: bool = True,
                       invariants: Sequence[Invariant] = ()) -> PropagationResult:
    """
    Collapse an edge of any node, keeping ``keep`` (default: smaller id).

    The multimesh link condition is checked before anything is modified.
    """
    mesh = mm.mesh(node)
    e = mesh.require(edge)
    keep = min(e) if keep is None else int(keep)
    if keep not in e:
        raise StructuralError(f"survivor {keep} is not an endpoint", witness=tuple(e))
    other = e[1] if keep == e[0] else e[0]
    if check_link and not multimesh_link_condition(mm, node, e):
        raise LinkConditionError(f"multimesh link condition fails for {tuple(e)} in '{node}'", witness=tuple(e))
    K, R = mm.map_up_ordered(node, (keep, other))
    _check_before(mm, invariants)

    order = mm.preorder()
    region: Dict[str, Set[int]] = {mm.root_id: {K, R}}
    captured: Dict[str, Captured] = {}
    for n in order[1:]:
        p, cm = mm.parent[n], mm.maps[n]
        parent_mesh = mm.nodes[p]
        star = set()
        for v in region[p]:
            star.update(parent_mesh.vertex_facets(v))
        captured[n] = {cf: cm.facet_vertex_map(cf) for cf in cm.anchors_on(star)}
        region[n] = {c for vm in captured[n].values() for c, pv in vm.items() if pv in region[p]}

    with mm.transaction() as journal:
        mark = journal.mark()
        result = PropagationResult(OperationKind.COLLAPSE, node, (int(edge[0]), int(edge[1])), (K, R))
        result.records[mm.root_id] = [edge_collapse(mm.root, (K, R), keep=K, t=t, check_link=check_link)]
        for n in order[1:]:
            result.records[n] = _restrict_collapse(mm.nodes[n], captured[n], result.records[mm.parent[n]], t)
        for n in order[1:]:
            update_anchors_for(mm.maps[n], captured[n], result.records[n], result.records[mm.parent[n]], {})
        _finish(mm, result, check_after, invariants)
        result.survivor = keep
        result.rollback = Rollback(journal, mark, mm.generation)
    return result


def propagate_swap(mm: MultiMesh, node: str, edge: Sequence[int], check_after: bool = True,
                   invariants: Sequence[Invariant] = ()) -> PropagationResult:
    """
    Swap an interior edge of ``node`` as a propagated split then collapse.

    Opposite vertices are tried in the order of ``swap_candidates``; a
    candidate whose collapse is rejected is undone before the next is tried.
    """
    mesh = mm.mesh(node)
    e = mesh.require(edge)
    if mesh.dimension < 2:
        raise OperationRejected(f"swap needs a mesh of dimension 2 or 3, got {mesh.dimension}", witness=tuple(e))
    if mesh.is_boundary(e):
        raise BoundaryError(f"cannot swap boundary edge {tuple(e)}", witness=tuple(e))
    a, b = int(edge[0]), int(edge[1])
    candidates = swap_candidates(mesh, (a, b))
    last_error: OperationRejected = LinkConditionError(f"no opposite vertex admits a swap of {tuple(e)}",
                                                       witness=tuple(e))
    with mm.transaction() as journal:
        mark = journal.mark()
        for c in candidates:
            attempt = journal.mark()
            split = propagate_split(mm, node, (a, b), t=0.5, check_after=False)
            m = split.new_vertex(node, (a, b))
            try:
                collapse = propagate_collapse(mm, node, (m, c), keep=c, t=0.0,
                                              check_after=check_after, invariants=invariants)
            except OperationRejected as exc:
                journal.unwind_to(attempt)
                last_error = exc
                continue
            result = PropagationResult(OperationKind.SWAP, node, (a, b), split.root_edge, survivor=c)
            for n in mm.nodes:
                result.records[n] = split.records.get(n, []) + collapse.records.get(n, [])
            result.rollback = Rollback(journal, mark, mm.generation)
            return result
        raise last_error


def propagate(mm: MultiMesh, node: str, op: OperationKind, edge: Sequence[int], **kwargs) -> PropagationResult:
    """Dispatch to the split, collapse or swap propagation."""
    op = OperationKind(op)
    if op == OperationKind.SPLIT:
        return propagate_split(mm, node, edge, **kwargs)
    if op == OperationKind.COLLAPSE:
        return propagate_collapse(mm, node, edge, **kwargs)
    return propagate_swap(mm, node, edge, **kwargs)
