"""Signed measures and element quality"""
from itertools import combinations
from typing import Sequence

import numpy as np

from .mesh import POSITION, Mesh


def signed_area(p: np.ndarray) -> float:
    """Signed area of a 2D triangle given as a 3x2 array (CCW positive)."""
    a, b, c = p[0], p[1], p[2]
    return 0.5 * float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def signed_volume(p: np.ndarray) -> float:
    """Signed volume of a tetrahedron given as a 4x3 array."""
    return float(np.linalg.det(np.stack([p[1] - p[0], p[2] - p[0], p[3] - p[0]]))) / 6.0


def measure(p: np.ndarray) -> float:
    """Unsigned length, area or volume of a simplex given by its corner rows."""
    k = len(p) - 1
    if k == 0:
        return 0.0
    edges = p[1:] - p[0]
    gram = edges @ edges.T
    return float(np.sqrt(max(np.linalg.det(gram), 0.0))) / float(np.prod(np.arange(1, k + 1)))


def quality(p: np.ndarray) -> float:
    """
    Signed shape quality normalised to 1 for the regular simplex.

    Triangles (2D corners) and tetrahedra carry the orientation sign; embedded
    triangles and edges are unsigned.
    """
    k = len(p) - 1
    sq = sum(float(np.sum((p[i] - p[j]) ** 2)) for i, j in combinations(range(k + 1), 2))
    if sq == 0.0:
        return 0.0
    if k == 1:
        return 1.0
    if k == 2:
        area = signed_area(p) if p.shape[1] == 2 else measure(p)
        return 4.0 * np.sqrt(3.0) * area / sq
    if k == 3:
        rms = np.sqrt(sq / 6.0)
        return 6.0 * np.sqrt(2.0) * signed_volume(p) / rms ** 3
    return 0.0


def corners(mesh: Mesh, ordered: Sequence[int], attribute: str = POSITION) -> np.ndarray:
    return mesh.vertex_attribute(attribute).values[list(ordered)]


def facet_quality(mesh: Mesh, fid: int, attribute: str = POSITION) -> float:
    return quality(corners(mesh, mesh.facet(fid), attribute))


def edge_length(mesh: Mesh, edge: Sequence[int], attribute: str = POSITION) -> float:
    p = corners(mesh, edge, attribute)
    return float(np.linalg.norm(p[1] - p[0]))


def mean_edge_length(mesh: Mesh, attribute: str = POSITION) -> float:
    edges = mesh.edges()
    if not edges:
        return 0.0
    values = mesh.vertex_attribute(attribute).values
    e = np.asarray(edges)
    return float(np.mean(np.linalg.norm(values[e[:, 1]] - values[e[:, 0]], axis=1)))
