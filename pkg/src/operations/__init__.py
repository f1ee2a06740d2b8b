"""Local topological operations on a single mesh"""
from .records import OperationKind, OperationRecord
from .rollback import Rollback, rollback, journaled
from .split import edge_split, interpolate_vertex
from .collapse import edge_collapse, raw_collapse
from .swap import edge_swap, swap_candidates

__all__ = [
    "OperationKind", "OperationRecord", "Rollback", "rollback", "journaled",
    "edge_split", "interpolate_vertex", "edge_collapse", "raw_collapse", "edge_swap", "swap_candidates",
]
