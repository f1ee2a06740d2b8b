"""Builders shared by several test modules"""
import numpy as np

from src.apps.embedded_remesh import SURFACE_NODE, build_embedded_multimesh
from src.apps.seam_decimate import UV_NODE, build_seam_multimesh
from src.mesh import generators
from src.mesh.mesh import Mesh
from src.mesh.topology import coned_copy, validate
from src.multimesh.construction import from_tags
from src.multimesh.propagation import propagate_split
from src.operations.collapse import raw_collapse


def collapse_oracle(mesh, edge) -> bool:
    """Brute force: collapse on the coned copy and ask whether the result is still a valid mesh."""
    coned = coned_copy(mesh)
    raw_collapse(coned, edge)
    return validate(coned, strict=True).is_valid


def hexagon_with_dented_uv():
    """
    Hexagon fan whose UV copy pulls ring vertex 2 toward the centre.

    Collapsing the spoke (0, 1) to its midpoint folds the UV triangle (0, 2, 3).
    """
    root = generators.hexagon_fan()
    uv_values = root.positions().copy()
    uv_values[2] = [0.3, 0.1]
    facets = [f for _, f in root.facets()]
    child = Mesh.from_facets(2, facets, vertex_count=root.vertex_count)
    child.add_vertex_attribute("uv", 2, values=np.asarray(uv_values))
    corners = [[(v, v) for v in f] for f in facets]
    return build_seam_multimesh(root, child, corners)


def split_every_edge(mm, rounds: int = 1):
    """Split each root edge once per round; every triangle becomes four."""
    for _ in range(rounds):
        for edge in list(mm.root.edges()):
            propagate_split(mm, mm.root_id, edge)
    return mm


def seam_with_children():
    """
    Textured cube with three descendants.

    The UV child carries its chart border as an edge-mesh grandchild, and a
    strip of four root triangles hangs off the root as a second child.
    """
    mm = build_seam_multimesh(*generators.textured_cube())
    uv = mm.mesh(UV_NODE)
    border, border_map = from_tags(uv, uv.boundary_faces(), 1)
    mm.add_child(UV_NODE, "border", border_map)
    strip = [f for _, f in mm.root.facets()][:4]
    _, strip_map = from_tags(mm.root, strip, 2)
    mm.add_child(mm.root_id, "strip", strip_map)
    return mm


def tets_with_children():
    """Tet cube with its boundary surface and a loop of feature edges on the bottom face."""
    mm = build_embedded_multimesh(generators.cube_tet_grid(1))
    surface = mm.mesh(SURFACE_NODE)
    _, loop_map = from_tags(surface, [(0, 1), (1, 3), (2, 3), (0, 2)], 1)
    mm.add_child(SURFACE_NODE, "loop", loop_map)
    return mm
