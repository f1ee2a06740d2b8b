"""Seam-preserving decimation of a textured surface"""
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..mesh.geometry import edge_length
from ..mesh.mesh import Mesh
from ..mesh.topology import count_components
from ..multimesh.construction import from_facet_bijection, pairing_from_corners
from ..multimesh.diagnostics import preimage_histogram
from ..multimesh.multimesh import MultiMesh
from ..operations.records import OperationKind
from ..scheduling.invariants import Invariant, no_inversion_invariant
from ..scheduling.scheduler import PassConfig, PassStatistics, run_pass

UV_NODE = "uv"


class SeamReport(BaseModel):
    """Seam structure of a position/UV multimesh."""
    facets: int = Field(..., description="Root facet count")
    uv_facets: int = Field(..., description="UV facet count")
    charts: int = Field(..., description="Connected components of the UV mesh")
    seam_edges: int = Field(..., description="Root edges with two UV preimages")
    seam_components: int = Field(..., description="Connected components of the seam curve network")
    histogram: Dict[int, int] = Field(default_factory=dict, description="Preimage size -> root edge count")


def build_seam_multimesh(positions: Mesh, uv: Mesh, corners: Sequence[Sequence[Tuple[int, int]]]) -> MultiMesh:
    """Position mesh as root, seam-cut UV mesh as its only child."""
    mm = MultiMesh(positions)
    mm.add_child(mm.root_id, UV_NODE, from_facet_bijection(positions, uv, pairing_from_corners(corners)))
    return mm


def seam_edges(mm: MultiMesh, node: str = UV_NODE) -> List[Tuple[int, int]]:
    cm = mm.maps[node]
    return [tuple(e) for e in mm.root.edges() if len(cm.preimage(e)) == 2]


def seam_report(mm: MultiMesh, node: str = UV_NODE) -> SeamReport:
    edges = seam_edges(mm, node)
    if edges:
        network = Mesh.from_facets(1, edges, vertex_count=mm.root.vertex_count)
        components = count_components(network)
    else:
        components = 0
    return SeamReport(
        facets=mm.root.num_facets,
        uv_facets=mm.mesh(node).num_facets,
        charts=count_components(mm.mesh(node)),
        seam_edges=len(edges),
        seam_components=components,
        histogram=preimage_histogram(mm, node),
    )


def decimation_pass(target_faces: int, root: str = "root", node: str = UV_NODE, attribute: str = "uv",
                    invariants: Sequence[Invariant] = (), max_attempts: Optional[int] = None) -> PassConfig:
    """Shortest root edge first, collapsed to its midpoint, until the root has ``target_faces``."""

    def score(mesh: Mesh, edge) -> float:
        return edge_length(mesh, edge)

    def plan(mm: MultiMesh, n: str, edge) -> Dict:
        return {"edge": edge, "keep": min(edge), "t": 0.5}

    def stop(mm: MultiMesh, _: PassStatistics) -> bool:
        return mm.root.num_facets <= target_faces

    return PassConfig(
        name="seam_decimate",
        node=root,
        operation=OperationKind.COLLAPSE,
        score=score,
        plan=plan,
        stop=stop,
        invariants=[no_inversion_invariant(node, attribute), *invariants],
        max_attempts=max_attempts,
    )


def seam_decimate(mm: MultiMesh, target_faces: int, node: str = UV_NODE, attribute: str = "uv",
                  invariants: Sequence[Invariant] = ()) -> PassStatistics:
    """
    Collapse root edges until the root has at most ``target_faces`` facets.

    Candidates come from the root only; the UV child follows by restriction
    and carries a no-inversion invariant. Stops early when every remaining
    candidate is rejected.
    """
    return run_pass(mm, decimation_pass(target_faces, mm.root_id, node, attribute, invariants))
