import struct

import numpy as np
import pytest

from src.apps.seam_decimate import UV_NODE, build_seam_multimesh, seam_report
from src.errors import ArchiveVersionError, ParseError, StructuralError
from src.io.archive import MAGIC, archive_bytes, load_archive, parse_archive, save_archive
from src.io.medit import REGION, load_medit, medit_text, parse_medit, save_medit
from src.io.obj import document_meshes, load_obj, obj_text, parse_obj, save_obj
from src.mesh.mesh import Mesh
from src.multimesh.construction import from_tags
from src.multimesh.diagnostics import check_consistency
from src.multimesh.multimesh import MultiMesh
from src.multimesh.propagation import propagate_split

TEXTURED_TRIANGLE = """\
# one textured triangle
v 0 0 0
v 1 0 0
v 0 1 0
vt 0 0
vt 1 0
vt 0 1
f 1/1 2/2 3/3
"""

SINGLE_TET = """\
MeshVersionFormatted 1
Dimension 3
Vertices
4
0 0 0 0
1 0 0 0
0 1 0 0
0 0 1 0
Tetrahedra
1
1 2 3 4 7
End
"""


# ----------------------------------------------------------------------
# OBJ
# ----------------------------------------------------------------------

def test_textured_triangle():
    positions, uv, corners = document_meshes(parse_obj(TEXTURED_TRIANGLE))
    assert positions.num_facets == 1
    assert uv.num_facets == 1
    assert corners == [[(0, 0), (1, 1), (2, 2)]]
    assert np.allclose(uv.vertex_value("uv", 1), [1.0, 0.0])


def test_polygons_are_fan_triangulated():
    doc = parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")
    assert [[v for v, _ in f] for f in doc.faces] == [[0, 1, 2], [0, 2, 3]]
    assert doc.face_lines == [5, 5]
    assert not doc.has_texcoords


def test_negative_indices_count_from_the_end():
    doc = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n")
    assert doc.faces == [[(0, None), (1, None), (2, None)]]


def test_out_of_range_index_names_the_line():
    with pytest.raises(ParseError) as info:
        parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\n\nf 1 2 4\n")
    assert info.value.line == 5


def test_bad_coordinate_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_obj("v 0 zero 0\n")


def test_partial_uv_layout_is_rejected():
    text = TEXTURED_TRIANGLE + "v 1 1 0\nf 2 4 3\n"
    with pytest.raises(ParseError) as info:
        document_meshes(parse_obj(text))
    assert info.value.line == 10
    positions, uv, _ = document_meshes(parse_obj(text), uv=False)
    assert uv is None
    assert positions.num_facets == 2


def test_file_without_faces_is_rejected():
    with pytest.raises(ParseError):
        document_meshes(parse_obj("v 0 0 0\n"))


def test_obj_file_round_trip_keeps_the_seams(cube_mm, tmp_path):
    path = save_obj(cube_mm, tmp_path / "cube.obj", uv_node=UV_NODE)
    mm = build_seam_multimesh(*load_obj(path))
    assert seam_report(mm) == seam_report(cube_mm)
    assert np.allclose(mm.root.positions(), cube_mm.root.positions())


def test_obj_pads_planar_positions(hexagon):
    first = obj_text(hexagon).splitlines()[0]
    assert first == "v 0 0 0"


def test_obj_refuses_empty_meshes():
    with pytest.raises(StructuralError):
        obj_text(Mesh(2))


# ----------------------------------------------------------------------
# MEDIT
# ----------------------------------------------------------------------

def test_parse_single_tet():
    doc = parse_medit(SINGLE_TET)
    assert doc.tetrahedra == [[0, 1, 2, 3]]
    assert doc.tetrahedron_refs == [7]


def test_medit_needs_tetrahedra():
    with pytest.raises(ParseError):
        parse_medit("MeshVersionFormatted 1\nDimension 3\nVertices\n0\nEnd\n")


def test_medit_rejects_unknown_sections():
    with pytest.raises(ParseError) as info:
        parse_medit("MeshVersionFormatted 1\nDimension 3\nPolygons\n")
    assert info.value.line == 3


def test_medit_reports_truncation():
    with pytest.raises(ParseError):
        parse_medit(SINGLE_TET.replace("1 2 3 4 7\nEnd\n", "1 2 3"))


def test_medit_file_round_trip(tmp_path):
    path = tmp_path / "tet.mesh"
    path.write_text(SINGLE_TET)
    mesh = load_medit(path)
    assert int(mesh.facet_attributes[REGION][0][0]) == 7
    again = load_medit(save_medit(mesh, tmp_path / "again.mesh"))
    assert again.facets() == mesh.facets()
    assert np.allclose(again.positions(), mesh.positions())
    assert int(again.facet_attributes[REGION][0][0]) == 7


def test_medit_writes_triangles(cube_tets):
    text = medit_text(cube_tets, triangles=cube_tets.boundary_faces())
    doc = parse_medit(text)
    assert len(doc.triangles) == 12
    assert len(doc.tetrahedra) == 6


def test_medit_refuses_surfaces_and_empty_meshes(hexagon, tmp_path):
    with pytest.raises(StructuralError):
        medit_text(hexagon)
    with pytest.raises(StructuralError):
        save_medit(Mesh(3), tmp_path / "empty.mesh")


# ----------------------------------------------------------------------
# Archive
# ----------------------------------------------------------------------

def test_archive_round_trip_is_byte_stable(cube_mm):
    data = archive_bytes(cube_mm)
    assert data.startswith(MAGIC)
    again = parse_archive(data)
    assert again.snapshot() == cube_mm.snapshot()
    assert archive_bytes(again) == data


def test_archive_after_a_propagated_split(seam_mm, tmp_path):
    propagate_split(seam_mm, "root", (0, 4))
    path = save_archive(seam_mm, tmp_path / "patch.mmsh")
    again = load_archive(path)
    assert again.snapshot() == seam_mm.snapshot()
    assert check_consistency(again).is_consistent


def test_archive_version_mismatch(cube_mm):
    data = bytearray(archive_bytes(cube_mm))
    struct.pack_into("<I", data, len(MAGIC), 2)
    with pytest.raises(ArchiveVersionError):
        parse_archive(bytes(data))


def test_archive_rejects_bad_magic_truncation_and_trailing_bytes(cube_mm):
    data = archive_bytes(cube_mm)
    with pytest.raises(ParseError):
        parse_archive(b"XXXX" + data[4:])
    with pytest.raises(ParseError):
        parse_archive(data[:-3])
    with pytest.raises(ParseError):
        parse_archive(data + b"\x00")


def test_archive_of_an_embedded_surface(cube_tets):
    surface, cmap = from_tags(cube_tets, cube_tets.boundary_faces(), 2)
    mm = MultiMesh(cube_tets)
    mm.add_child("root", "surface", cmap)
    again = parse_archive(archive_bytes(mm))
    assert again.preorder() == ["root", "surface"]
    assert again.snapshot() == mm.snapshot()


def test_archive_refuses_empty_multimesh():
    with pytest.raises(StructuralError):
        archive_bytes(MultiMesh(Mesh(2)))
