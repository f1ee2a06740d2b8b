"""Trees of meshes linked by containment maps"""
from .containment import Anchor, ContainmentMap, transport_anchor
from .multimesh import MultiMesh
from .construction import FacetPairing, from_facet_bijection, from_tags, identity_pairing, pairing_from_corners
from .link import multimesh_link_condition
from .propagation import (
    PropagationResult,
    propagate,
    propagate_split,
    propagate_collapse,
    propagate_swap,
    update_anchors_for,
)
from .diagnostics import ConsistencyReport, check_consistency, is_clean, node_reports, preimage_histogram

__all__ = [
    "Anchor", "ContainmentMap", "transport_anchor", "MultiMesh", "FacetPairing", "from_facet_bijection",
    "from_tags", "identity_pairing", "pairing_from_corners", "multimesh_link_condition", "PropagationResult",
    "propagate", "propagate_split", "propagate_collapse", "propagate_swap", "update_anchors_for",
    "ConsistencyReport", "check_consistency", "is_clean", "node_reports", "preimage_histogram",
]
