"""Export stage: write pipeline results"""
from typing import Any, Dict, List

from ..apps.embedded_remesh import SURFACE_NODE
from ..apps.periodic import TILE_NODE
from ..apps.seam_decimate import UV_NODE
from ..errors import MultiMeshError
from ..graph.state import PipelineConfig, PipelineKind, PipelineState
from ..io.archive import save_archive
from ..io.medit import save_medit
from ..io.obj import save_obj
from ..multimesh.multimesh import MultiMesh
from ..utils.logger import log_message, log_stage_end, log_stage_start


def write_outputs(config: PipelineConfig, mm: MultiMesh) -> List[str]:
    written: List[str] = []
    if config.output_path:
        if config.kind == PipelineKind.SEAM_DECIMATE:
            written.append(save_obj(mm, config.output_path, uv_node=UV_NODE))
        elif config.kind == PipelineKind.EMBEDDED_REMESH:
            surface = mm.mesh(SURFACE_NODE)
            triangles = [mm.map_up_ordered(SURFACE_NODE, f) for _, f in surface.facets()]
            written.append(save_medit(mm.root, config.output_path, triangles))
        else:
            written.append(save_obj(mm.mesh(TILE_NODE), config.output_path))
    if config.surface_output_path and config.kind == PipelineKind.EMBEDDED_REMESH:
        written.append(save_obj(mm.mesh(SURFACE_NODE), config.surface_output_path))
    if config.archive_path:
        written.append(save_archive(mm, config.archive_path))
    return written


def export_node(state: PipelineState) -> Dict[str, Any]:
    """
    Export stage node: main output, optional surface OBJ and optional archive.

    Returns:
        Updated state with the written paths
    """
    log_stage_start("export", state)
    try:
        written = write_outputs(state["config"], state["multimesh"])
    except (MultiMeshError, OSError) as exc:
        output = {"error": f"export: {exc}", "notes": [f"export failed: {exc}"]}
        log_message("export", "error", str(exc))
        log_stage_end("export", {"error": str(exc)})
        return output

    log_stage_end("export", {"outputs": written})
    return {"outputs": written, "notes": [f"export: wrote {len(written)} file(s)"]}
