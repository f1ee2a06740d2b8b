import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.apps.seam_decimate import UV_NODE, build_seam_multimesh
from src.errors import BoundaryError, InvariantViolation, LinkConditionError, OperationRejected, StaleRollbackError
from src.mesh import generators
from src.multimesh.construction import from_tags
from src.multimesh.diagnostics import check_consistency, is_clean
from src.multimesh.link import failing_nodes, multimesh_link_condition
from src.multimesh.multimesh import MultiMesh
from src.multimesh.propagation import propagate, propagate_collapse, propagate_split, propagate_swap
from src.operations.records import OperationKind
from src.operations.rollback import rollback
from src.mesh.topology import link_condition
from src.scheduling.invariants import Invariant, Phase, no_inversion_invariant, signed_measures
from tests.helpers import hexagon_with_dented_uv, seam_with_children, tets_with_children


def test_seam_edge_split_reaches_both_copies(seam_mm):
    result = propagate_split(seam_mm, "root", (0, 4))
    assert seam_mm.root.num_facets == 6
    assert seam_mm.mesh(UV_NODE).num_facets == 6
    assert len(result.records[UV_NODE]) == 2
    new_root = result.new_vertex("root", (0, 4))
    cm = seam_mm.maps[UV_NODE]
    assert cm.vertex_image(result.new_vertex(UV_NODE, (0, 4))) == new_root
    assert cm.vertex_image(result.new_vertex(UV_NODE, (5, 4))) == new_root
    assert check_consistency(seam_mm).is_consistent


def test_split_from_the_child_maps_to_the_root(seam_mm):
    result = propagate_split(seam_mm, UV_NODE, (5, 4))
    assert result.root_edge in {(0, 4), (4, 0)}
    assert len(result.records[UV_NODE]) == 2
    assert is_clean(seam_mm)


def test_split_interpolates_uv(seam_mm):
    result = propagate_split(seam_mm, UV_NODE, (4, 5), t=0.5)
    uv = seam_mm.mesh(UV_NODE)
    m = result.new_vertex(UV_NODE, (4, 5))
    assert np.allclose(uv.vertex_value("uv", m), [0.25, 0.275])


def test_multimesh_link_condition_is_stricter_than_the_root(seam_mm):
    assert link_condition(seam_mm.root, (1, 4))
    assert not multimesh_link_condition(seam_mm, "root", (1, 4))
    assert failing_nodes(seam_mm, "root", (1, 4)) == [(UV_NODE, (1, 4))]


def test_collapse_failing_multimesh_link_leaves_everything_untouched(seam_mm):
    before = seam_mm.snapshot()
    with pytest.raises(LinkConditionError):
        propagate_collapse(seam_mm, "root", (1, 4))
    assert seam_mm.snapshot() == before


def test_collapse_along_the_seam(seam_mm):
    assert multimesh_link_condition(seam_mm, "root", (0, 4))
    result = propagate_collapse(seam_mm, "root", (0, 4), keep=0)
    assert seam_mm.root.num_facets == 2
    assert seam_mm.mesh(UV_NODE).num_facets == 2
    assert result.survivor == 0
    assert is_clean(seam_mm)


def test_invariant_failure_rolls_back_every_node():
    mm = hexagon_with_dented_uv()
    before = mm.snapshot()
    with pytest.raises(InvariantViolation):
        propagate_collapse(mm, "root", (0, 1), keep=0, t=0.5, invariants=[no_inversion_invariant(UV_NODE)])
    assert mm.snapshot() == before


def test_the_same_collapse_without_the_invariant_folds_uv():
    mm = hexagon_with_dented_uv()
    propagate_collapse(mm, "root", (0, 1), keep=0, t=0.5)
    assert np.any(signed_measures(mm.mesh(UV_NODE), "uv") < 0)
    assert check_consistency(mm).is_consistent


def test_registered_invariants_apply_to_every_operation():
    mm = hexagon_with_dented_uv()
    mm.invariants.append(no_inversion_invariant(UV_NODE))
    before = mm.snapshot()
    with pytest.raises(InvariantViolation):
        propagate(mm, "root", OperationKind.COLLAPSE, (0, 1), keep=0, t=0.5)
    assert mm.snapshot() == before


def test_before_invariant_blocks_the_operation(seam_mm):
    frozen = Invariant(name="frozen", scope_node="root", phase=Phase.BEFORE, predicate=lambda mesh, facets: False)
    before = seam_mm.snapshot()
    with pytest.raises(InvariantViolation):
        propagate_split(seam_mm, "root", (0, 4), invariants=[frozen])
    assert seam_mm.snapshot() == before


def test_propagated_rollback_restores_all_nodes(seam_mm):
    before = seam_mm.snapshot()
    result = propagate_split(seam_mm, "root", (0, 4))
    rollback(seam_mm, result.rollback)
    assert seam_mm.snapshot() == before
    assert check_consistency(seam_mm).is_consistent


def test_propagated_rollback_goes_stale(seam_mm):
    first = propagate_split(seam_mm, "root", (0, 4))
    propagate_split(seam_mm, "root", (1, 2))
    with pytest.raises(StaleRollbackError):
        rollback(seam_mm, first.rollback)


def test_swap_follows_into_the_uv_copy():
    mm = build_seam_multimesh(*generators.uv_grid(3))
    result = propagate_swap(mm, "root", (5, 10))
    assert result.kind == OperationKind.SWAP
    assert mm.root.has_simplex((6, 9))
    assert mm.mesh(UV_NODE).has_simplex((6, 9))
    assert not mm.root.has_simplex((5, 10))
    assert np.all(signed_measures(mm.mesh(UV_NODE), "uv") > 0)
    assert is_clean(mm)


def test_swap_refuses_boundary_edges(seam_mm):
    with pytest.raises(BoundaryError):
        propagate_swap(seam_mm, "root", (0, 1))


def test_split_through_three_levels(cube_tets):
    surface, surface_map = from_tags(cube_tets, cube_tets.boundary_faces(), 2)
    mm = MultiMesh(cube_tets)
    mm.add_child("root", "surface", surface_map)
    loop, loop_map = from_tags(surface, [(0, 1), (1, 3), (2, 3), (0, 2)], 1)
    mm.add_child("surface", "loop", loop_map)
    result = propagate(mm, "loop", OperationKind.SPLIT, (0, 1))
    assert mm.root.num_facets == 8
    assert mm.mesh("surface").num_facets == 14
    assert mm.mesh("loop").num_facets == 5
    new_root = result.new_vertex("root", (0, 1))
    (image,) = mm.map_up("loop", (result.new_vertex("loop", (0, 1)),))
    assert image == new_root
    assert is_clean(mm)


def test_operations_are_deterministic(seam_mm):
    other = seam_mm.copy()
    for mm in (seam_mm, other):
        propagate_split(mm, "root", (0, 4))
        propagate_collapse(mm, "root", (2, 3), keep=2, t=0.5)
    assert seam_mm.snapshot() == other.snapshot()


@settings(max_examples=25, deadline=None)
@given(steps=st.lists(st.tuples(st.sampled_from(["split", "collapse", "swap"]), st.integers(0, 10_000)),
                      min_size=1, max_size=5))
def test_random_operations_keep_the_multimesh_clean(steps):
    mm = build_seam_multimesh(*generators.uv_grid(2))
    for op, pick in steps:
        edges = mm.root.edges()
        edge = edges[pick % len(edges)]
        before = mm.snapshot()
        try:
            propagate(mm, "root", OperationKind(op), edge)
        except (OperationRejected, BoundaryError):
            assert mm.snapshot() == before
        assert is_clean(mm)


TREES = {
    "seam": seam_with_children,
    "tets": tets_with_children,
}

OPERATIONS = [OperationKind.SPLIT, OperationKind.COLLAPSE, OperationKind.SWAP]

# splits are skipped past this many root facets so long runs stay small
ROOT_FACET_CAP = 60


@settings(max_examples=8, deadline=None)
@given(tree=st.sampled_from(sorted(TREES)), seed=st.integers(0, 2**32 - 1))
def test_long_runs_from_any_node_keep_the_tree_clean(tree, seed):
    mm = TREES[tree]()
    nodes = mm.preorder()
    rng = np.random.default_rng(seed)
    accepted = 0
    for _ in range(100):
        live = [n for n in nodes if mm.mesh(n).num_facets]
        node = live[int(rng.integers(len(live)))]
        edges = mm.mesh(node).edges()
        edge = edges[int(rng.integers(len(edges)))]
        op = OPERATIONS[int(rng.integers(len(OPERATIONS)))]
        if op == OperationKind.SPLIT and mm.root.num_facets > ROOT_FACET_CAP:
            op = OperationKind.COLLAPSE
        before = mm.snapshot()
        try:
            propagate(mm, node, op, edge)
        except (OperationRejected, BoundaryError):
            assert mm.snapshot() == before
            continue
        accepted += 1
        assert is_clean(mm), (node, op.value, tuple(edge))
    assert accepted > 0
