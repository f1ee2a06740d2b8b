"""Pipeline stage nodes"""
from .load import load_multimesh, load_node, read_inputs
from .build import build_node
from .optimize import optimize_node, run_pipeline
from .export import export_node, write_outputs
from .metrics import min_tet_volume, pipeline_metrics

__all__ = [
    "load_multimesh", "load_node", "read_inputs", "build_node", "optimize_node", "run_pipeline",
    "export_node", "write_outputs", "min_tet_volume", "pipeline_metrics",
]
