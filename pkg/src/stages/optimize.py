"""Optimize stage: run the scheduled passes of a pipeline"""
from typing import Any, Dict, List

from ..apps.embedded_remesh import embedded_remesh
from ..apps.periodic import periodic_remesh
from ..apps.remeshing import IterationStatistics
from ..apps.seam_decimate import seam_decimate
from ..errors import MultiMeshError
from ..graph.state import PipelineConfig, PipelineKind, PipelineState, RunStatistics
from ..multimesh.diagnostics import is_clean
from ..multimesh.multimesh import MultiMesh
from ..utils.logger import log_pass, log_message, log_stage_end, log_stage_start
from .metrics import pipeline_metrics


def run_pipeline(config: PipelineConfig, mm: MultiMesh, domain, statistics: RunStatistics) -> RunStatistics:
    """Run the passes of ``config.kind`` on ``mm`` and fold their statistics into ``statistics``."""
    if config.kind == PipelineKind.SEAM_DECIMATE:
        stats = seam_decimate(mm, config.target_faces)
        statistics.add_pass(stats)
        log_pass("optimize", stats.model_dump())
    else:
        if config.kind == PipelineKind.EMBEDDED_REMESH:
            iterations: List[IterationStatistics] = embedded_remesh(
                mm, config.target_length, config.iterations, config.envelope,
                seed=config.seed, smoothing_weight=config.smoothing_weight)
        else:
            iterations = periodic_remesh(mm, domain, config.target_length, config.iterations,
                                         smoothing_weight=config.smoothing_weight)
        for it in iterations:
            statistics.iterations.append(it)
            for stats in it.passes:
                statistics.add_pass(stats)
                log_pass("optimize", {"iteration": it.iteration, **stats.model_dump()})
    statistics.after = pipeline_metrics(config.kind, mm, domain)
    statistics.valid = is_clean(mm)
    return statistics


def optimize_node(state: PipelineState) -> Dict[str, Any]:
    """
    Optimize stage node: decimation or remeshing on the built multimesh.

    Returns:
        Updated state with run statistics
    """
    log_stage_start("optimize", state)
    config = state["config"]
    try:
        statistics = run_pipeline(config, state["multimesh"], state.get("domain"),
                                  state["statistics"].model_copy(deep=True))
    except MultiMeshError as exc:
        output = {"error": f"optimize: {exc}", "notes": [f"optimize failed: {exc}"]}
        log_message("optimize", "error", str(exc))
        log_stage_end("optimize", {"error": str(exc)})
        return output

    log_stage_end("optimize", {"totals": statistics.totals, "after": statistics.after,
                               "valid": statistics.valid})
    note = f"optimize: {statistics.totals.get('accepted', 0)} of {statistics.totals.get('attempted', 0)} accepted"
    return {"statistics": statistics, "notes": [note]}
