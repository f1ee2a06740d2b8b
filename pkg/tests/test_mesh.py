import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import BoundaryError, StaleHandleError, StructuralError
from src.mesh import generators
from src.mesh.dart import Dart, canonical_dart, darts_of, facet_dart, switch
from src.mesh.mesh import Mesh
from src.mesh.topology import Condition, count_components, euler_characteristic, link, simplex_counts, validate


def test_tetrahedron_boundary_counts(tet_boundary):
    assert simplex_counts(tet_boundary) == [4, 6, 4]
    assert euler_characteristic(tet_boundary) == 2
    assert tet_boundary.boundary_faces() == []
    assert validate(tet_boundary).is_valid


def test_hexagon_is_a_disk(hexagon):
    assert hexagon.num_vertices == 7
    assert hexagon.num_facets == 6
    assert len(hexagon.boundary_faces()) == 6
    assert euler_characteristic(hexagon) == 1
    assert hexagon.is_boundary((1, 2))
    assert not hexagon.is_boundary((0, 1))
    assert not hexagon.is_boundary((0,))


def test_three_fins_violates_manifold():
    report = validate(generators.three_fins())
    assert not report.is_valid
    assert report.conditions() == {Condition.MANIFOLD}
    assert report.violations[0].witness == [0, 1]


def test_loose_edge_is_not_pure():
    mesh = Mesh.from_facets(2, [(0, 1, 2)], vertex_count=4, loose=[(2, 3)])
    report = validate(mesh)
    assert report.conditions() == {Condition.PURE}
    assert [2, 3] in [v.witness for v in report.violations]


def test_loose_triangle_without_edges_violates_closure():
    mesh = Mesh.from_facets(3, [(0, 1, 2, 3)], vertex_count=6, loose=[(3, 4, 5)])
    report = validate(mesh)
    assert Condition.CLOSURE in report.conditions()


def test_coincident_facets_violate_intersection():
    mesh = Mesh.from_facets(2, [(0, 1, 2), (0, 2, 1)])
    assert validate(mesh).conditions() == {Condition.INTERSECTION}


def test_malformed_facets_raise():
    with pytest.raises(StructuralError):
        Mesh.from_facets(2, [(0, 1)])
    with pytest.raises(StructuralError):
        Mesh.from_facets(2, [(0, 1, 1)])
    with pytest.raises(StructuralError):
        Mesh.from_facets(2, [(0, 1, 5)], vertex_count=3)


def test_position_array_must_match_vertex_count():
    with pytest.raises(StructuralError):
        Mesh.from_facets(2, [(0, 1, 2)], positions=np.zeros((2, 2)))


def test_disconnected_mesh_is_valid_with_two_components():
    mesh = Mesh.from_facets(2, [(0, 1, 2), (3, 4, 5)])
    assert validate(mesh).is_valid
    assert count_components(mesh) == 2


def test_link_of_interior_vertex_is_the_ring(hexagon):
    ring = link(hexagon, (0,))
    assert {s for s in ring if len(s) == 1} == {(v,) for v in range(1, 7)}
    assert {s for s in ring if len(s) == 2} == {tuple(sorted((1 + i, 1 + (i + 1) % 6))) for i in range(6)}


def test_coned_link_of_boundary_vertex_contains_the_apex(hexagon):
    assert (-1,) in link(hexagon, (1,), coned=True)
    assert (-1,) not in link(hexagon, (0,), coned=True)


def test_copy_is_independent(hexagon):
    other = hexagon.copy()
    other.remove_facet(0)
    assert hexagon.num_facets == 6
    assert other.num_facets == 5


def test_tombstoned_ids_are_not_reused(hexagon):
    hexagon.remove_facet(2)
    fid = hexagon.add_facet((0, 3, 4))
    assert fid == 6
    assert not hexagon.is_facet_alive(2)


def test_darts_of_interior_edge(hexagon):
    darts = darts_of(hexagon, (0, 1))
    assert len(darts) == 4
    assert {d.facet for d in darts} == hexagon.cofaces((0, 1))
    assert canonical_dart(hexagon, (0, 1)) == darts[0]


def test_switch_across_boundary_raises(hexagon):
    fid = next(iter(hexagon.cofaces((1, 2))))
    dart = facet_dart(hexagon, fid)
    boundary_dart = Dart((1, 2, 0), fid)
    with pytest.raises(BoundaryError):
        switch(hexagon, boundary_dart, 2)


def test_switch_on_removed_facet_is_stale(hexagon):
    dart = facet_dart(hexagon, 0)
    hexagon.remove_facet(0)
    with pytest.raises(StaleHandleError):
        switch(hexagon, dart, 0)


MESHES = {
    "hexagon": generators.hexagon_fan,
    "tet_boundary": generators.tetrahedron_boundary,
    "grid": lambda: generators.square_grid(2),
    "cube": lambda: generators.cube_tet_grid(1),
}


@settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(sorted(MESHES)), data=st.data())
def test_switch_is_an_involution(name, data):
    mesh = MESHES[name]()
    fid = data.draw(st.sampled_from(mesh.facet_ids()))
    dart = data.draw(st.sampled_from(darts_of(mesh, mesh.facet(fid))))
    level = data.draw(st.integers(min_value=0, max_value=mesh.dimension))
    try:
        other = switch(mesh, dart, level)
    except BoundaryError:
        return
    assert other != dart
    assert switch(mesh, other, level) == dart
    assert other.vertices[:level] == dart.vertices[:level]
    if level < mesh.dimension:
        assert other.facet == dart.facet
        assert other.vertices[level + 2:] == dart.vertices[level + 2:]
