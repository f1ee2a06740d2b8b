"""Load stage: read pipeline input files into meshes"""
from pathlib import Path
from typing import Any, Dict, Union

from ..apps.embedded_remesh import build_embedded_multimesh
from ..apps.seam_decimate import build_seam_multimesh
from ..config import ARCHIVE_EXTENSION
from ..errors import MultiMeshError, ParseError
from ..graph.state import PipelineConfig, PipelineKind, PipelineState
from ..io.archive import load_archive
from ..io.medit import document_mesh, read_medit
from ..io.obj import load_obj
from ..multimesh.multimesh import MultiMesh
from ..utils.logger import log_message, log_stage_end, log_stage_start


def read_inputs(config: PipelineConfig) -> Dict[str, Any]:
    """Meshes a pipeline needs, keyed by role."""
    if not config.input_path:
        raise ParseError("no input file given")
    path = Path(config.input_path)
    if config.kind == PipelineKind.SEAM_DECIMATE:
        positions, uv, corners = load_obj(path, uv=True)
        return {"positions": positions, "uv": uv, "corners": corners}
    if config.kind == PipelineKind.EMBEDDED_REMESH:
        doc = read_medit(path)
        return {"tets": document_mesh(doc), "triangles": [tuple(t) for t in doc.triangles]}
    positions, _, _ = load_obj(path, uv=False)
    return {"tile": positions}


def load_multimesh(path: Union[str, Path]) -> MultiMesh:
    """
    Multimesh view of any supported file.

    Archives load as stored. OBJ files with texture coordinates become a
    position/UV pair, without them a single node. MEDIT files become a tet
    root with its boundary surface (or the listed triangles) as child.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ARCHIVE_EXTENSION:
        return load_archive(path)
    if suffix == ".obj":
        positions, uv, corners = load_obj(path)
        return MultiMesh(positions) if uv is None else build_seam_multimesh(positions, uv, corners)
    if suffix == ".mesh":
        doc = read_medit(path)
        return build_embedded_multimesh(document_mesh(doc), [tuple(t) for t in doc.triangles] or None)
    raise ParseError(f"unsupported file type '{path.suffix}' (expected .obj, .mesh or {ARCHIVE_EXTENSION})")


def load_node(state: PipelineState) -> Dict[str, Any]:
    """
    Load stage node: reads the input file unless inputs were handed in.

    Returns:
        Updated state with inputs, or an error
    """
    log_stage_start("load", state)
    if state.get("inputs") is not None:
        output = {"notes": ["load: inputs provided by caller"]}
        log_stage_end("load", {"skipped": True})
        return output

    config = state["config"]
    try:
        inputs = read_inputs(config)
    except (MultiMeshError, OSError) as exc:
        output = {"error": f"load: {exc}", "notes": [f"load failed: {exc}"]}
        log_message("load", "error", str(exc))
        log_stage_end("load", {"error": str(exc)})
        return output

    counts = {role: mesh.num_facets for role, mesh in inputs.items() if hasattr(mesh, "num_facets")}
    log_stage_end("load", {"input_path": config.input_path, "facets": counts})
    return {"inputs": inputs, "notes": [f"load: read {config.input_path}"]}
