"""Build stage: construct the multimesh of a pipeline"""
from typing import Any, Dict

from ..apps.embedded_remesh import build_embedded_multimesh
from ..apps.periodic import build_periodic_multimesh
from ..apps.seam_decimate import build_seam_multimesh
from ..errors import MultiMeshError
from ..graph.state import PipelineKind, PipelineState, RunStatistics
from ..utils.logger import log_message, log_stage_end, log_stage_start
from .metrics import pipeline_metrics


def build_node(state: PipelineState) -> Dict[str, Any]:
    """
    Build stage node: seam pair, tet/surface pair or tile/torus pair.

    Returns:
        Updated state with the multimesh, the periodic domain and initial statistics
    """
    log_stage_start("build", state)
    config = state["config"]
    inputs = state["inputs"]
    domain = None
    try:
        if config.kind == PipelineKind.SEAM_DECIMATE:
            mm = build_seam_multimesh(inputs["positions"], inputs["uv"], inputs["corners"])
        elif config.kind == PipelineKind.EMBEDDED_REMESH:
            mm = build_embedded_multimesh(inputs["tets"], inputs.get("triangles") or None)
        else:
            mm, domain = build_periodic_multimesh(inputs["tile"], config.period)
    except MultiMeshError as exc:
        output = {"error": f"build: {exc}", "notes": [f"build failed: {exc}"]}
        log_message("build", "error", str(exc))
        log_stage_end("build", {"error": str(exc), "witness": str(exc.witness)})
        return output

    statistics = RunStatistics(pipeline=config.kind, before=pipeline_metrics(config.kind, mm, domain))
    log_stage_end("build", {"nodes": mm.summary(), "before": statistics.before})
    return {
        "multimesh": mm,
        "domain": domain,
        "statistics": statistics,
        "notes": [f"build: {len(mm.nodes)} nodes"],
    }
