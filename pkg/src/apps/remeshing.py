"""Isotropic remeshing passes shared by the application pipelines"""
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from ..mesh.geometry import edge_length, mean_edge_length
from ..mesh.mesh import POSITION, Mesh
from ..multimesh.multimesh import MultiMesh
from ..operations.records import OperationKind
from ..scheduling.invariants import Invariant
from ..scheduling.scheduler import PassConfig, PassStatistics, run_pass
from ..scheduling.smoothing import smooth_vertices

# 0 = free, higher = more constrained (boundary side, corner, ...)
Rank = Callable[[int], int]

SPLIT_FACTOR = 4.0 / 3.0
COLLAPSE_FACTOR = 4.0 / 5.0


def _free(_: int) -> int:
    return 0


class IterationStatistics(BaseModel):
    """Pass statistics and smoothing counts of one remeshing iteration."""
    iteration: int = Field(..., description="Zero-based iteration index")
    passes: List[PassStatistics] = Field(default_factory=list)
    smoothed: int = 0
    smoothing_rejected: int = 0
    mean_edge_length: float = 0.0


def collapse_plan(mesh: Mesh, edge, rank: Rank, attribute: str = POSITION,
                  max_length: float = math.inf) -> Optional[Dict]:
    """
    Survivor and interpolation parameter for collapsing ``edge``, or None.

    The more constrained endpoint survives in place; equally ranked free
    endpoints meet at the midpoint. Two constrained endpoints of equal rank
    only merge along a boundary edge, and never at rank 2 or above. The merged
    vertex may not create an edge longer than ``max_length``.
    """
    a, b = int(edge[0]), int(edge[1])
    ra, rb = rank(a), rank(b)
    if ra == rb:
        on_boundary = mesh.dimension == 2 and mesh.is_boundary((a, b))
        if ra >= 2 or (ra == 1 and not on_boundary):
            return None
        keep, other, t = min(a, b), max(a, b), 0.5
    elif ra > rb:
        keep, other, t = a, b, 0.0
    else:
        keep, other, t = b, a, 0.0
    if math.isfinite(max_length):
        values = mesh.vertex_attribute(attribute).values
        merged = (1.0 - t) * values[keep] + t * values[other]
        around = (mesh.vertex_neighbors(keep) | mesh.vertex_neighbors(other)) - {keep, other}
        if around and np.max(np.linalg.norm(values[sorted(around)] - merged, axis=1)) > max_length:
            return None
    return {"edge": (keep, other), "keep": keep, "t": t}


def _valence_target(mesh: Mesh, v: int) -> int:
    return 4 if mesh.is_boundary((v,)) else 6


def _opposite(mesh: Mesh, edge) -> List[int]:
    key = set(edge)
    return sorted({v for fid in mesh.cofaces(edge) for v in mesh.facet(fid)} - key)


def valence_gain(mesh: Mesh, edge) -> Optional[int]:
    """Reduction of the valence deviation a swap of an interior 2-mesh edge gives."""
    if mesh.dimension != 2 or mesh.is_boundary(edge):
        return None
    opposite = _opposite(mesh, edge)
    if len(opposite) != 2:
        return None
    c, d = opposite
    if mesh.has_simplex((c, d)):
        return None
    a, b = edge
    val = {v: len(mesh.vertex_neighbors(v)) for v in (a, b, c, d)}
    before = sum(abs(val[v] - _valence_target(mesh, v)) for v in (a, b, c, d))
    after = (abs(val[a] - 1 - _valence_target(mesh, a)) + abs(val[b] - 1 - _valence_target(mesh, b))
             + abs(val[c] + 1 - _valence_target(mesh, c)) + abs(val[d] + 1 - _valence_target(mesh, d)))
    return before - after


def coplanar(mesh: Mesh, edge, attribute: str = POSITION, min_cosine: float = 0.95) -> bool:
    """The two triangles at an embedded surface edge are nearly coplanar."""
    values = mesh.vertex_attribute(attribute).values
    if values.shape[1] != 3:
        return True
    normals = []
    for fid in sorted(mesh.cofaces(edge)):
        p = values[list(mesh.facet(fid))]
        n = np.cross(p[1] - p[0], p[2] - p[0])
        norm = np.linalg.norm(n)
        if norm == 0.0:
            return False
        normals.append(n / norm)
    return len(normals) == 2 and float(normals[0] @ normals[1]) >= min_cosine


def split_pass(node: str, target: float, invariants: Sequence[Invariant] = (),
               attribute: str = POSITION) -> PassConfig:
    high = SPLIT_FACTOR * target

    def score(mesh: Mesh, edge) -> Optional[float]:
        length = edge_length(mesh, edge, attribute)
        return -length if length > high else None

    return PassConfig(name="split", node=node, operation=OperationKind.SPLIT, score=score,
                      invariants=list(invariants))


def collapse_pass(node: str, target: float, invariants: Sequence[Invariant] = (), rank: Rank = _free,
                  attribute: str = POSITION) -> PassConfig:
    low, high = COLLAPSE_FACTOR * target, SPLIT_FACTOR * target

    def score(mesh: Mesh, edge) -> Optional[float]:
        length = edge_length(mesh, edge, attribute)
        return length if length < low else None

    def plan(mm: MultiMesh, n: str, edge) -> Optional[Dict]:
        return collapse_plan(mm.mesh(n), edge, rank, attribute, max_length=high)

    return PassConfig(name="collapse", node=node, operation=OperationKind.COLLAPSE, score=score, plan=plan,
                      invariants=list(invariants))


def swap_pass(node: str, invariants: Sequence[Invariant] = (), attribute: str = POSITION) -> PassConfig:
    def score(mesh: Mesh, edge) -> Optional[float]:
        gain = valence_gain(mesh, edge)
        if gain is None or gain <= 0 or not coplanar(mesh, edge, attribute):
            return None
        return -float(gain)

    return PassConfig(name="swap", node=node, operation=OperationKind.SWAP, score=score,
                      invariants=list(invariants))


def remesh_iteration(mm: MultiMesh, node: str, target: float, iteration: int = 0,
                     invariants: Sequence[Invariant] = (), rank: Rank = _free,
                     attribute: str = POSITION, smooth: bool = True,
                     smoothing_weight: Optional[float] = None) -> IterationStatistics:
    """One round of split, collapse, valence swap and tangential smoothing on ``node``."""
    stats = IterationStatistics(iteration=iteration)
    mesh = mm.mesh(node)
    if math.isfinite(target):
        stats.passes.append(run_pass(mm, split_pass(node, target, invariants, attribute)))
    stats.passes.append(run_pass(mm, collapse_pass(node, target, invariants, rank, attribute)))
    if mesh.dimension == 2:
        stats.passes.append(run_pass(mm, swap_pass(node, invariants, attribute)))
    if smooth:
        free = [v for v in mesh.vertices() if rank(v) == 0 and not mesh.is_boundary((v,))]
        stats.smoothed, stats.smoothing_rejected = smooth_vertices(
            mm, node, free, weight=smoothing_weight, attribute=attribute, invariants=invariants)
    stats.mean_edge_length = mean_edge_length(mesh, attribute)
    return stats
