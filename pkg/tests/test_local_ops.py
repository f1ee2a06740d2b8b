import numpy as np
import pytest

from src.errors import BoundaryError, LinkConditionError, OperationRejected, StaleRollbackError
from src.mesh import generators
from src.mesh.topology import validate
from src.operations.collapse import edge_collapse
from src.operations.rollback import rollback
from src.operations.split import edge_split
from src.operations.swap import edge_swap
from src.scheduling.invariants import signed_measures


def test_split_interior_spoke(hexagon):
    rec = edge_split(hexagon, (0, 1))
    assert hexagon.num_facets == 8
    assert hexagon.num_vertices == 8
    assert np.allclose(hexagon.vertex_value("position", rec.new_vertex), [0.5, 0.0])
    assert not hexagon.has_simplex((0, 1))
    assert hexagon.has_simplex((0, rec.new_vertex))
    assert validate(hexagon).is_valid
    assert np.all(signed_measures(hexagon) > 0)


def test_split_keeps_both_halves_of_each_facet(hexagon):
    rec = edge_split(hexagon, (0, 1), t=0.25)
    assert sorted(rec.split_pairs) == sorted(rec.deleted_facets)
    for old, (fa, fb) in rec.split_pairs.items():
        assert 0 in hexagon.facet(fa) and 1 not in hexagon.facet(fa)
        assert 1 in hexagon.facet(fb) and 0 not in hexagon.facet(fb)
    assert np.allclose(hexagon.vertex_value("position", rec.new_vertex), [0.25, 0.0])


def test_split_with_explicit_attributes(hexagon):
    rec = edge_split(hexagon, (0, 1), new_vertex_attrs={"position": [0.4, 0.1]})
    assert np.allclose(hexagon.vertex_value("position", rec.new_vertex), [0.4, 0.1])


def test_collapse_interior_spoke(hexagon):
    rec = edge_collapse(hexagon, (0, 1), keep=0)
    assert hexagon.num_facets == 4
    assert not hexagon.is_vertex_alive(1)
    assert rec.survivor == 0 and rec.removed_vertex == 1
    assert validate(hexagon).is_valid


def test_collapse_moves_survivor_by_t(hexagon):
    edge_collapse(hexagon, (0, 1), keep=0, t=0.5)
    assert np.allclose(hexagon.vertex_value("position", 0), [0.5, 0.0])


def test_collapse_reports_moved_star(hexagon):
    rec = edge_collapse(hexagon, (0, 1), keep=0, t=0.5)
    assert set(rec.touched_facets) == set(hexagon.vertex_facets(0))


def test_collapse_failing_link_condition_leaves_mesh_untouched(quad):
    before = quad.snapshot()
    with pytest.raises(LinkConditionError):
        edge_collapse(quad, (0, 1))
    assert quad.snapshot() == before


def test_swap_flips_the_quad_diagonal(quad):
    edge_swap(quad, (0, 1))
    facets = {tuple(sorted(f)) for _, f in quad.facets()}
    assert facets == {(0, 2, 3), (1, 2, 3)}
    assert quad.has_simplex((2, 3))
    assert not quad.has_simplex((0, 1))
    assert np.all(signed_measures(quad) > 0)
    assert quad.num_vertices == 4


def test_swap_rejects_boundary_edges(quad):
    with pytest.raises(BoundaryError):
        edge_swap(quad, (0, 2))


def test_swap_needs_a_surface_or_volume():
    with pytest.raises(OperationRejected):
        edge_swap(generators.path_mesh(3), (1, 2))


def test_swap_interior_edge_of_two_tets():
    mesh = generators.two_tetrahedra()
    mesh_before = mesh.num_facets
    with pytest.raises(BoundaryError):
        edge_swap(mesh, (0, 1))
    assert mesh.num_facets == mesh_before


def test_swap_in_tet_grid_stays_valid(cube_tets):
    interior = [e for e in cube_tets.edges() if not cube_tets.is_boundary(e)]
    assert interior
    edge_swap(cube_tets, interior[0])
    assert validate(cube_tets, strict=True).is_valid


def test_split_rollback_restores_snapshot(hexagon):
    before = hexagon.snapshot()
    rec = edge_split(hexagon, (0, 1))
    rollback(hexagon, rec.rollback)
    assert hexagon.snapshot() == before


def test_collapse_rollback_restores_snapshot(hexagon):
    before = hexagon.snapshot()
    rec = edge_collapse(hexagon, (0, 1), keep=0, t=0.5)
    rollback(hexagon, rec.rollback)
    assert hexagon.snapshot() == before


def test_stale_rollback_is_refused(hexagon):
    first = edge_split(hexagon, (0, 1))
    edge_split(hexagon, (0, 2))
    with pytest.raises(StaleRollbackError):
        rollback(hexagon, first.rollback)


def test_rollback_twice_is_refused(hexagon):
    rec = edge_split(hexagon, (0, 1))
    rollback(hexagon, rec.rollback)
    with pytest.raises(StaleRollbackError):
        rollback(hexagon, rec.rollback)


def test_split_collapse_sequence_stays_valid(grid):
    for edge in [(5, 10), (0, 5), (6, 11)]:
        if grid.has_simplex(edge):
            edge_split(grid, edge)
    for edge in list(grid.edges()):
        if grid.has_simplex(edge) and not grid.is_boundary(edge):
            try:
                edge_collapse(grid, edge, t=0.5)
            except LinkConditionError:
                continue
            break
    assert validate(grid).is_valid
