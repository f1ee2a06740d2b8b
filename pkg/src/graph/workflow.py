"""LangGraph workflow definition"""
from typing import Any, Dict, Optional

from langgraph.graph import END, START, StateGraph

from ..stages.build import build_node
from ..stages.export import export_node
from ..stages.load import load_node
from ..stages.optimize import optimize_node
from .state import PipelineConfig, PipelineState


def _next_or_end(next_node: str):
    def route(state: PipelineState) -> str:
        return END if state.get("error") else next_node
    return route


def build_workflow():
    """
    Builds and compiles the pipeline graph.

    Returns:
        Compiled graph ready for execution
    """
    workflow = StateGraph(PipelineState)

    workflow.add_node("load_node", load_node)
    workflow.add_node("build_node", build_node)
    workflow.add_node("optimize_node", optimize_node)
    workflow.add_node("export_node", export_node)

    # Linear pipeline; any stage error ends the run
    workflow.add_edge(START, "load_node")
    workflow.add_conditional_edges("load_node", _next_or_end("build_node"), ["build_node", END])
    workflow.add_conditional_edges("build_node", _next_or_end("optimize_node"), ["optimize_node", END])
    workflow.add_conditional_edges("optimize_node", _next_or_end("export_node"), ["export_node", END])
    workflow.add_edge("export_node", END)

    return workflow.compile()


def create_initial_state(config: PipelineConfig, inputs: Optional[Dict[str, Any]] = None) -> PipelineState:
    """
    Creates the initial state for the graph.

    Args:
        config: Validated pipeline parameters
        inputs: Meshes keyed by role; when given the load stage does not read files

    Returns:
        Initial PipelineState
    """
    return {
        "config": config,
        "inputs": inputs,
        "multimesh": None,
        "domain": None,
        "statistics": None,
        "outputs": [],
        "notes": [],
        "error": None,
    }


def run_workflow(config: PipelineConfig, inputs: Optional[Dict[str, Any]] = None) -> PipelineState:
    """Run a whole pipeline and return the final state."""
    return build_workflow().invoke(create_initial_state(config, inputs))
