"""Consistency checks and statistics over containment maps"""
from collections import Counter
from itertools import combinations
from typing import Dict, List

from pydantic import BaseModel, Field

from ..mesh.dart import Dart, is_alive
from ..mesh.simplex import Simplex
from ..mesh.topology import ValidityReport, validate
from .containment import ContainmentMap, apply_local_switches
from .multimesh import MultiMesh


class MapIssue(BaseModel):
    """One inconsistency found in a containment map."""
    node: str = Field(..., description="Child node of the offending map")
    check: str = Field(..., description="anchor, vertex_map, face_preservation, round_trip, transport or back_refs")
    witness: List[int] = Field(default_factory=list)
    detail: str = Field("")


class ConsistencyReport(BaseModel):
    issues: List[MapIssue] = Field(default_factory=list)
    empty_nodes: List[str] = Field(default_factory=list, description="Nodes left without facets")

    @property
    def is_consistent(self) -> bool:
        return not self.issues


def check_map(node: str, cm: ContainmentMap) -> List[MapIssue]:
    issues: List[MapIssue] = []
    child, parent = cm.child, cm.parent
    k = child.dimension
    alive = set(child.facet_ids())
    for cf in sorted(set(cm.anchors) - alive):
        issues.append(MapIssue(node=node, check="anchor", witness=[cf], detail="anchor on a deleted facet"))
    global_map: Dict[int, int] = {}
    for cf in sorted(alive):
        if cf not in cm.anchors:
            issues.append(MapIssue(node=node, check="anchor", witness=[cf], detail="facet has no anchor"))
            continue
        if not cm.is_valid_anchor(cf):
            issues.append(MapIssue(node=node, check="anchor", witness=[cf], detail="anchor darts not alive"))
            continue
        vm = cm.facet_vertex_map(cf)
        for c, p in vm.items():
            if global_map.setdefault(c, p) != p:
                issues.append(MapIssue(node=node, check="vertex_map", witness=[c],
                                       detail=f"maps to {global_map[c]} and {p}"))
        facet = tuple(sorted(child.facet(cf)))
        for size in range(1, k + 2):
            for face in combinations(facet, size):
                image = Simplex(vm[v] for v in face)
                if not parent.has_simplex(image):
                    issues.append(MapIssue(node=node, check="face_preservation", witness=list(face),
                                           detail=f"image {tuple(image)} missing from parent"))
                elif Simplex(face) not in cm.preimage(image):
                    issues.append(MapIssue(node=node, check="round_trip", witness=list(face)))
        # Switching below the facet level commutes with transport.
        base = Dart(facet, cf)
        image = cm.transport(base)
        for level in range(k):
            moved = Dart(apply_local_switches(facet, [level]), cf)
            expected = Dart(apply_local_switches(image.vertices, [level]), image.facet)
            if cm.transport(moved) != expected or not is_alive(parent, expected):
                issues.append(MapIssue(node=node, check="transport", witness=list(facet),
                                       detail=f"switch level {level} does not commute"))
    rebuilt = ContainmentMap(parent, child)
    for cf, a in cm.anchors.items():
        rebuilt._link(cf, a)
    if rebuilt.back_refs != cm.back_refs or rebuilt.anchored_on != cm.anchored_on:
        issues.append(MapIssue(node=node, check="back_refs", detail="back references out of date"))
    return issues


def check_consistency(mm: MultiMesh) -> ConsistencyReport:
    """Check every map: anchors, global vertex map, face preservation, round trip, transport."""
    report = ConsistencyReport()
    for node in mm.preorder()[1:]:
        report.issues.extend(check_map(node, mm.maps[node]))
    report.empty_nodes = [n for n in mm.preorder() if mm.nodes[n].is_empty()]
    return report


def preimage_histogram(mm: MultiMesh, node: str, dimension: int = 1) -> Dict[int, int]:
    """Counts of |map_down(s)| over the parent's simplices of a dimension (edges by default)."""
    parent = mm.parent[node]
    if parent is None:
        return {}
    cm = mm.maps[node]
    sizes = Counter(len(cm.preimage(s)) for s in mm.nodes[parent].simplices(dimension))
    return dict(sorted(sizes.items()))


def node_reports(mm: MultiMesh, strict: bool = False) -> Dict[str, ValidityReport]:
    """Validity report of every node in preorder."""
    return {node: validate(mm.nodes[node], strict) for node in mm.preorder()}


def is_clean(mm: MultiMesh) -> bool:
    """Every node valid and every containment map consistent."""
    return all(r.is_valid for r in node_reports(mm).values()) and check_consistency(mm).is_consistent
