"""Isotropic remeshing of a surface embedded in a tetrahedral mesh"""
import math
from typing import Callable, List, Optional, Sequence

from ..mesh.geometry import mean_edge_length
from ..mesh.mesh import Mesh
from ..mesh.simplex import Simplex
from ..multimesh.construction import from_tags
from ..multimesh.multimesh import MultiMesh
from ..scheduling.envelope import Envelope, envelope_invariant
from ..scheduling.invariants import Invariant, positive_volume_invariant
from .remeshing import IterationStatistics, remesh_iteration

SURFACE_NODE = "surface"


def build_embedded_multimesh(tets: Mesh, tag: Optional[Callable[[Simplex], bool]] = None) -> MultiMesh:
    """
    Tet mesh as root and the tagged triangles as a surface child.

    Without a tag the boundary triangles of the tet mesh are used.
    """
    faces = tag if tag is not None else tets.boundary_faces()
    surface, cmap = from_tags(tets, faces, 2)
    mm = MultiMesh(tets)
    mm.add_child(mm.root_id, SURFACE_NODE, cmap)
    return mm


def embedded_invariants(mm: MultiMesh, envelope_eps: float = math.inf, node: str = SURFACE_NODE,
                        seed: Optional[int] = None) -> List[Invariant]:
    """Positive tet volume on the root plus an envelope on the surface when ``envelope_eps`` is finite."""
    invariants = [positive_volume_invariant(mm.root_id)]
    if math.isfinite(envelope_eps):
        reference = mm.mesh(node).copy()
        invariants.append(envelope_invariant(node, Envelope(reference, envelope_eps, seed=seed)))
    return invariants


def embedded_remesh(mm: MultiMesh, target_length: Optional[float], iterations: int,
                    envelope_eps: float = math.inf, node: str = SURFACE_NODE,
                    seed: Optional[int] = None, smoothing_weight: Optional[float] = None,
                    extra: Sequence[Invariant] = ()) -> List[IterationStatistics]:
    """
    Remesh the surface child; every operation reaches the tets through propagation.

    ``target_length`` defaults to the mean surface edge length. An infinite
    target disables splits.
    """
    if target_length is None:
        target_length = mean_edge_length(mm.mesh(node))
    invariants = embedded_invariants(mm, envelope_eps, node, seed) + list(extra)
    return [remesh_iteration(mm, node, target_length, i, invariants, smoothing_weight=smoothing_weight)
            for i in range(iterations)]
