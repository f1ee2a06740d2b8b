"""Before/after measurements reported in run statistics"""
from typing import Any, Dict, Optional

from ..apps.embedded_remesh import SURFACE_NODE
from ..apps.periodic import TILE_NODE, PeriodicTile, boundary_congruent, torus_characteristic
from ..apps.seam_decimate import seam_report
from ..graph.state import PipelineKind
from ..mesh.geometry import corners, facet_quality, mean_edge_length, signed_volume
from ..mesh.mesh import Mesh
from ..multimesh.multimesh import MultiMesh


def min_tet_volume(mm: MultiMesh) -> float:
    root = mm.root
    return min(signed_volume(corners(root, f)) for _, f in root.facets())


def min_quality(mesh: Mesh) -> float:
    """Worst shape quality over the facets (1 for equilateral, <= 0 for inverted)."""
    return float(min(facet_quality(mesh, fid) for fid in mesh.facet_ids()))


def pipeline_metrics(kind: PipelineKind, mm: MultiMesh, domain: Optional[PeriodicTile] = None) -> Dict[str, Any]:
    if kind == PipelineKind.SEAM_DECIMATE:
        return seam_report(mm).model_dump()
    if kind == PipelineKind.EMBEDDED_REMESH:
        surface = mm.mesh(SURFACE_NODE)
        return {
            "tets": mm.root.num_facets,
            "surface_facets": surface.num_facets,
            "surface_vertices": surface.num_vertices,
            "mean_edge_length": mean_edge_length(surface),
            "min_surface_quality": min_quality(surface),
            "min_tet_volume": min_tet_volume(mm),
        }
    tile = mm.mesh(TILE_NODE)
    return {
        "tile_facets": tile.num_facets,
        "torus_vertices": mm.root.num_vertices,
        "torus_euler_characteristic": torus_characteristic(mm),
        "mean_edge_length": mean_edge_length(tile),
        "min_tile_quality": min_quality(tile),
        "tileable": boundary_congruent(mm, domain),
    }
