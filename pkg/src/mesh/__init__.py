"""Single simplicial meshes: storage, darts, validity and links"""
from .simplex import Simplex, VIRTUAL_VERTEX, oriented_face
from .journal import Journal
from .attributes import Attribute
from .mesh import Mesh, POSITION
from .dart import Dart, switch, switch_path, darts_of, canonical_dart, facet_dart, make_dart
from .topology import (
    Condition,
    Violation,
    ValidityReport,
    validate,
    link,
    link_condition,
    coned_copy,
    euler_characteristic,
    simplex_counts,
    count_components,
)

__all__ = [
    "Simplex", "VIRTUAL_VERTEX", "oriented_face", "Journal", "Attribute", "Mesh", "POSITION",
    "Dart", "switch", "switch_path", "darts_of", "canonical_dart", "facet_dart", "make_dart",
    "Condition", "Violation", "ValidityReport", "validate", "link", "link_condition", "coned_copy",
    "euler_characteristic", "simplex_counts", "count_components",
]
