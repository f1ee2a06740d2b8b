import pytest

from src.apps.seam_decimate import UV_NODE, seam_report
from src.errors import ConstructionError, TreeError
from src.mesh import generators
from src.mesh.dart import Dart, facet_dart, switch
from src.mesh.topology import euler_characteristic, validate
from src.multimesh.construction import (
    FacetPairing,
    from_facet_bijection,
    from_tags,
    identity_pairing,
    pairing_from_corners,
)
from src.mesh.mesh import Mesh
from src.mesh.simplex import Simplex
from src.multimesh.containment import Anchor, ContainmentMap, transport_anchor
from src.multimesh.diagnostics import check_consistency, preimage_histogram
from src.multimesh.multimesh import MultiMesh


def test_boundary_surface_of_tet_cube(cube_tets):
    surface, cmap = from_tags(cube_tets, cube_tets.boundary_faces(), 2)
    assert surface.num_facets == 12
    assert surface.num_vertices == 8
    assert euler_characteristic(surface) == 2
    assert validate(surface).is_valid
    mm = MultiMesh(cube_tets)
    mm.add_child("root", "surface", cmap)
    assert check_consistency(mm).is_consistent
    for _, f in surface.facets():
        image = mm.map_up("surface", f)
        assert cube_tets.is_boundary(image)


def test_tagging_with_a_predicate(hexagon):
    ring, cmap = from_tags(hexagon, lambda s: hexagon.is_boundary(s), 1)
    assert ring.dimension == 1
    assert ring.num_facets == 6
    assert ring.boundary_faces() == []
    mm = MultiMesh(hexagon)
    mm.add_child("root", "ring", cmap)
    assert check_consistency(mm).is_consistent
    assert preimage_histogram(mm, "ring") == {0: 6, 1: 6}


def test_non_manifold_tags_are_rejected(cube_tets):
    fins = [tuple(sorted(t)) for t in cube_tets.simplices(2) if {0, 7} <= set(t)][:3]
    assert len(fins) == 3
    with pytest.raises(ConstructionError):
        from_tags(cube_tets, fins, 2)


def test_empty_tag_set_is_rejected(hexagon):
    with pytest.raises(ConstructionError):
        from_tags(hexagon, [], 1)


def test_tag_must_be_a_simplex_of_the_parent(hexagon):
    with pytest.raises(ConstructionError):
        from_tags(hexagon, [(1, 4)], 1)


def test_inconsistent_corner_map_is_rejected():
    root, uv, corners = generators.seam_patch()
    corners = [list(c) for c in corners]
    corners[0] = [(0, 1), (1, 0), (4, 4)]
    with pytest.raises(ConstructionError):
        from_facet_bijection(root, uv, pairing_from_corners(corners))


def test_bijection_needs_equal_dimensions(hexagon):
    with pytest.raises(ConstructionError):
        from_facet_bijection(generators.cube_tet_grid(1), hexagon, [])


def test_bijection_needs_matching_facet_counts(hexagon):
    smaller = generators.hexagon_fan()
    smaller.remove_facet(0)
    with pytest.raises(ConstructionError):
        from_facet_bijection(hexagon, smaller, identity_pairing(smaller))


def test_corners_must_cover_the_facet(hexagon):
    child = hexagon.copy()
    pairing = identity_pairing(child)
    pairing[0] = FacetPairing(parent_facet=0, child_facet=0, corners=[(0, 0), (1, 1), (2, 3)])
    with pytest.raises(ConstructionError):
        from_facet_bijection(hexagon, child, pairing)


def test_add_child_rejects_higher_dimension(hexagon, cube_tets):
    mm = MultiMesh(hexagon)
    with pytest.raises(TreeError):
        mm.add_child("root", "tets", ContainmentMap(hexagon, cube_tets))


def test_add_child_rejects_duplicate_ids(hexagon):
    mm = MultiMesh(hexagon)
    child = hexagon.copy()
    mm.add_child("root", "copy", from_facet_bijection(hexagon, child, identity_pairing(child)))
    again = hexagon.copy()
    with pytest.raises(TreeError):
        mm.add_child("root", "copy", from_facet_bijection(hexagon, again, identity_pairing(again)))


def test_seam_patch_maps(seam_mm):
    assert seam_mm.map_down("root", (0, 4), UV_NODE) == {(0, 4), (4, 5)}
    assert seam_mm.map_up(UV_NODE, (4, 5)) == (0, 4)
    assert seam_mm.maps[UV_NODE].vertex_image(5) == 0
    assert seam_mm.map_down("root", (1, 2), UV_NODE) == {(1, 2)}
    assert preimage_histogram(seam_mm, UV_NODE) == {1: 7, 2: 1}
    assert check_consistency(seam_mm).is_consistent


def test_seam_patch_report(seam_mm):
    report = seam_report(seam_mm)
    assert report.seam_edges == 1
    assert report.seam_components == 1
    assert report.charts == 1
    assert report.histogram == {1: 7, 2: 1}


def test_textured_cube_has_a_spanning_tree_of_seams(cube_mm):
    report = seam_report(cube_mm)
    assert report.facets == 12
    assert report.uv_facets == 12
    assert report.charts == 1
    assert report.seam_edges == 7
    assert report.histogram == {1: 11, 2: 7}
    assert check_consistency(cube_mm).is_consistent


def test_transport_commutes_with_switches(seam_mm):
    cm = seam_mm.maps[UV_NODE]
    child = seam_mm.mesh(UV_NODE)
    for fid in child.facet_ids():
        dart = facet_dart(child, fid)
        image = cm.transport(dart)
        for level in range(child.dimension):
            assert cm.transport(switch(child, dart, level)) == switch(seam_mm.root, image, level)


def test_pullback_finds_every_preimage_dart(seam_mm):
    cm = seam_mm.maps[UV_NODE]
    root = seam_mm.root
    (fid,) = [f for f in root.cofaces((0, 4)) if 1 in root.facet(f)]
    parent_dart = Dart((0, 4, 1), fid)
    pulled = cm.pullback(parent_dart)
    assert len(pulled) == 1
    assert cm.transport(pulled[0]) == parent_dart


def test_three_level_chain_composes_maps(cube_tets):
    surface, surface_map = from_tags(cube_tets, cube_tets.boundary_faces(), 2)
    mm = MultiMesh(cube_tets)
    mm.add_child("root", "surface", surface_map)
    bottom = [(0, 1), (1, 3), (2, 3), (0, 2)]
    loop, loop_map = from_tags(surface, bottom, 1)
    mm.add_child("surface", "loop", loop_map)
    assert mm.preorder() == ["root", "surface", "loop"]
    assert mm.depth("loop") == 2
    for _, e in loop.facets():
        image = mm.map_up("loop", e)
        assert tuple(image) in {tuple(sorted(b)) for b in bottom}
        assert e in mm.map_down("root", image, "loop")
    assert check_consistency(mm).is_consistent


def test_map_between_siblings(hexagon):
    mm = MultiMesh(hexagon)
    ring, ring_map = from_tags(hexagon, hexagon.boundary_faces(), 1)
    mm.add_child("root", "ring", ring_map)
    copy = hexagon.copy()
    mm.add_child("root", "copy", from_facet_bijection(hexagon, copy, identity_pairing(copy)))
    assert mm.lowest_common_ancestor("ring", "copy") == "root"
    for _, e in ring.facets():
        assert mm.map_between("ring", e, "copy") == {mm.map_up("ring", e)}


def test_transport_anchor_follows_the_stored_anchor(seam_mm):
    cm = seam_mm.maps[UV_NODE]
    for cf in seam_mm.mesh(UV_NODE).facet_ids():
        anchor = cm.anchor(cf)
        assert transport_anchor(cm, anchor.child_dart) == anchor.parent_dart


# ----------------------------------------------------------------------
# Single-triangle anchors
# ----------------------------------------------------------------------

def test_paired_triangles_give_the_corner_anchor():
    # parent v_i = i, child ~v_i = 2 - i; e_i is the edge opposite v_i
    parent = Mesh.from_facets(2, [(0, 1, 2)])
    child = Mesh.from_facets(2, [(2, 1, 0)])
    cmap = from_facet_bijection(parent, child, [FacetPairing(parent_facet=0, child_facet=0,
                                                             corners=[(2, 0), (1, 1), (0, 2)])])
    # (~v1, ~e0, ~f) <-> (v1, e0, f)
    anchor = Anchor(Dart((1, 0, 2), 0), Dart((1, 2, 0), 0))
    assert cmap.is_valid_anchor(0, anchor)
    assert transport_anchor(cmap, anchor.child_dart) == anchor.parent_dart
    assert cmap.facet_vertex_map(0) == {0: 2, 1: 1, 2: 0}


def test_tagged_edges_of_a_triangle_give_edge_anchors():
    parent = Mesh.from_facets(2, [(0, 1, 2)])
    child, cmap = from_tags(parent, [(0, 2), (0, 1)], 1)
    by_edge = {frozenset(f): fid for fid, f in child.facets()}
    e0, e1 = by_edge[frozenset((0, 2))], by_edge[frozenset((0, 1))]
    # (~v2, ~e0) <-> (v2, e1, f) and (~v0, ~e1) <-> (v0, e2, f)
    expected = {
        e0: Anchor(Dart((2, 0), e0), Dart((2, 0, 1), 0)),
        e1: Anchor(Dart((0, 1), e1), Dart((0, 1, 2), 0)),
    }
    for cf, anchor in expected.items():
        assert cmap.is_valid_anchor(cf, anchor)
        assert transport_anchor(cmap, anchor.child_dart) == anchor.parent_dart


@pytest.mark.parametrize("case", ["surface_of_tets", "boundary_loop", "grid_column", "all_tets"])
def test_map_up_recovers_the_tagged_set(case):
    if case == "surface_of_tets":
        parent, k = generators.cube_tet_grid(2), 2
        tagged = parent.boundary_faces()
    elif case == "boundary_loop":
        parent, k = generators.square_grid(3), 1
        tagged = parent.boundary_faces()
    elif case == "grid_column":
        parent, k = generators.square_grid(3), 2
        xs = parent.positions()[:, 0]
        tagged = [s for s in parent.simplices(2) if all(xs[v] <= 1.0 / 3.0 + 1e-9 for v in s)]
    else:
        parent, k = generators.cube_tet_grid(1), 3
        tagged = parent.simplices(3)
    child, cmap = from_tags(parent, tagged, k)
    mm = MultiMesh(parent)
    mm.add_child("root", "tagged", cmap)
    images = [mm.map_up("tagged", f) for _, f in child.facets()]
    assert len(images) == len(tagged)
    assert set(images) == {Simplex(s) for s in tagged}
    for s in tagged:
        assert len(mm.map_down("root", s, "tagged")) == 1
