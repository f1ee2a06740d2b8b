import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.apps.embedded_remesh import build_embedded_multimesh
from src.apps.seam_decimate import build_seam_multimesh
from src.errors import BoundaryError, OperationRejected
from src.mesh import generators
from src.mesh.topology import link_condition
from src.multimesh.diagnostics import is_clean
from src.multimesh.link import multimesh_link_condition
from src.multimesh.multimesh import MultiMesh
from src.multimesh.propagation import propagate, propagate_collapse
from src.operations.records import OperationKind
from tests.helpers import collapse_oracle, seam_with_children, split_every_edge, tets_with_children

SURFACES = {
    "hexagon": generators.hexagon_fan,
    "quad": generators.two_triangle_quad,
    "tet_boundary": generators.tetrahedron_boundary,
    "grid": lambda: generators.square_grid(3),
    "icosahedron": lambda: generators.icosphere(0),
}

VOLUMES = {
    "single_tet": generators.single_tetrahedron,
    "two_tets": generators.two_tetrahedra,
    "cube": lambda: generators.cube_tet_grid(1),
}


def test_quad_diagonal_fails():
    assert not link_condition(generators.two_triangle_quad(), (0, 1))


def test_hexagon_spoke_passes():
    assert link_condition(generators.hexagon_fan(), (0, 1))


def test_closed_tetrahedron_edges_fail():
    mesh = generators.tetrahedron_boundary()
    assert not any(link_condition(mesh, e) for e in mesh.edges())


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_link_condition_matches_collapse_validity_on_surfaces(name):
    mesh = SURFACES[name]()
    for edge in mesh.edges():
        assert link_condition(mesh, edge) == collapse_oracle(mesh, edge), edge


@pytest.mark.parametrize("name", sorted(VOLUMES))
def test_link_condition_matches_collapse_validity_on_volumes(name):
    mesh = VOLUMES[name]()
    for edge in mesh.edges():
        assert link_condition(mesh, edge) == collapse_oracle(mesh, edge), edge


def test_link_condition_does_not_mutate(hexagon):
    before = hexagon.snapshot()
    for edge in hexagon.edges():
        link_condition(hexagon, edge)
    assert hexagon.snapshot() == before


MULTIMESHES = {
    "seam_patch": lambda: build_seam_multimesh(*generators.seam_patch()),
    "textured_cube": lambda: build_seam_multimesh(*generators.textured_cube()),
    "refined_cube": lambda: split_every_edge(build_seam_multimesh(*generators.textured_cube())),
    "uv_grid": lambda: build_seam_multimesh(*generators.uv_grid(3)),
    "seam_with_children": seam_with_children,
    "tets": lambda: build_embedded_multimesh(generators.cube_tet_grid(1)),
    "tets_refined": lambda: build_embedded_multimesh(generators.cube_tet_grid(2)),
    "tets_with_children": tets_with_children,
}

START_MESHES = {
    "grid": lambda: generators.square_grid(3),
    "icosahedron": lambda: generators.icosphere(0),
    "cube": lambda: generators.cube_tet_grid(1),
}

MAX_FACETS = 50


@pytest.mark.parametrize("name", sorted(MULTIMESHES))
def test_admitted_collapses_leave_every_node_valid(name):
    mm = MULTIMESHES[name]()
    admitted = 0
    for node in mm.preorder():
        for edge in mm.mesh(node).edges():
            if not multimesh_link_condition(mm, node, edge):
                continue
            admitted += 1
            trial = mm.copy()
            propagate_collapse(trial, node, edge, check_link=False, check_after=False)
            assert is_clean(trial), (node, tuple(edge))
    assert admitted > 0


@settings(max_examples=20, deadline=None)
@given(start=st.sampled_from(sorted(START_MESHES)),
       steps=st.lists(st.tuples(st.sampled_from(["split", "collapse", "swap"]), st.integers(0, 10_000)),
                      min_size=1, max_size=12))
def test_link_condition_on_random_meshes(start, steps):
    mm = MultiMesh(START_MESHES[start]())
    for op, pick in steps:
        if op == "split" and mm.root.num_facets > MAX_FACETS - 8:
            op = "collapse"
        edges = mm.root.edges()
        try:
            propagate(mm, "root", OperationKind(op), edges[pick % len(edges)])
        except (OperationRejected, BoundaryError):
            pass
    for edge in mm.root.edges():
        if link_condition(mm.root, edge):
            assert collapse_oracle(mm.root, edge), edge
