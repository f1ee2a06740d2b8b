"""Operation records produced by local operations"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Set, Tuple

from .rollback import Rollback


class OperationKind(str, Enum):
    """Local topological operation types."""
    SPLIT = "split"
    COLLAPSE = "collapse"
    SWAP = "swap"


@dataclass
class OperationRecord:
    """
    What one local operation did to one mesh.

    ``vertex_correspondence`` maps every vertex of the affected facets to its
    vertex after the operation. For splits ``split_pairs`` maps each replaced
    facet to its (sigma_a, sigma_b) pair, where sigma_a keeps ``a`` and sigma_b
    keeps ``b``. Collapses rename the removed vertex in place; the renamed
    facets are listed in ``modified_facets``.
    """
    kind: OperationKind
    edge: Tuple[int, int]
    new_vertex: Optional[int] = None
    removed_vertex: Optional[int] = None
    survivor: Optional[int] = None
    deleted_facets: List[int] = field(default_factory=list)
    created_facets: List[int] = field(default_factory=list)
    modified_facets: List[int] = field(default_factory=list)
    moved_facets: List[int] = field(default_factory=list)
    boundary_faces: Set[Tuple[int, ...]] = field(default_factory=set)
    vertex_correspondence: Dict[int, int] = field(default_factory=dict)
    split_pairs: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    rollback: Optional[Rollback] = None
    children: List["OperationRecord"] = field(default_factory=list)

    @property
    def touched_facets(self) -> List[int]:
        """Alive facets whose connectivity or vertex values this operation set."""
        return sorted(set(self.created_facets) | set(self.modified_facets) | set(self.moved_facets))

    @property
    def touched_vertices(self) -> Set[int]:
        out = set(self.edge)
        for v in (self.new_vertex, self.survivor):
            if v is not None:
                out.add(v)
        return out

    def summary(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "edge": list(self.edge),
            "new_vertex": self.new_vertex,
            "removed_vertex": self.removed_vertex,
            "deleted": len(self.deleted_facets),
            "created": len(self.created_facets),
            "modified": len(self.modified_facets),
        }
