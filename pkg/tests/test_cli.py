import json

import pytest

from main import main, parse_period
from src.io.archive import save_archive
from src.io.medit import save_medit
from src.io.obj import save_obj
from src.mesh import generators

THREE_FINS_OBJ = """\
v 0 0 0
v 1 0 0
v 0 1 0
v 0 -1 0
v 0 0 1
f 1 2 3
f 1 2 4
f 1 2 5
"""


@pytest.fixture
def cube_obj(tmp_path, cube_mm):
    return save_obj(cube_mm, tmp_path / "cube.obj", uv_node="uv")


def test_validate_clean_surface(tmp_path, capsys):
    path = save_obj(generators.tetrahedron_boundary(), tmp_path / "tet.obj")
    assert main(["validate", "--input", path, "--strict"]) == 0
    assert "[OK] root (2-mesh): valid" in capsys.readouterr().out


def test_validate_reports_violations(tmp_path, capsys):
    path = tmp_path / "fins.obj"
    path.write_text(THREE_FINS_OBJ)
    assert main(["validate", "--input", str(path)]) == 1
    assert "[FAIL] root" in capsys.readouterr().out


def test_validate_textured_obj_checks_the_maps(cube_obj, capsys):
    assert main(["validate", "--input", cube_obj]) == 0
    out = capsys.readouterr().out
    assert "[OK] uv (2-mesh): valid" in out
    assert "[OK] containment maps consistent" in out


def test_unreadable_file_is_an_error(tmp_path):
    path = tmp_path / "broken.obj"
    path.write_text("f 1 2 3\n")
    assert main(["validate", "--input", str(path)]) == 1


def test_info_prints_the_node_tree(tmp_path, cube_mm, capsys):
    path = save_archive(cube_mm, tmp_path / "cube.mmsh")
    assert main(["info", "--input", path]) == 0
    out = capsys.readouterr().out
    assert "root (2-mesh)" in out
    assert "preimage sizes" in out


def test_decimate_writes_statistics(cube_obj, tmp_path):
    stats_path = tmp_path / "stats.json"
    code = main(["decimate", "--input", cube_obj, "--target-faces", "100",
                 "--output", str(tmp_path / "out.obj"), "--json-stats", str(stats_path)])
    assert code == 0
    stats = json.loads(stats_path.read_text())
    assert stats["pipeline"] == "seam_decimate"
    assert stats["totals"]["accepted"] == 0
    assert (tmp_path / "out.obj").exists()


def test_decimate_without_target_is_a_usage_error(cube_obj):
    assert main(["decimate", "--input", cube_obj]) == 2


def test_config_file_overrides_flags(cube_obj, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"target_faces": 100}))
    stats_path = tmp_path / "stats.json"
    code = main(["decimate", "--input", cube_obj, "--target-faces", "1", "--config", str(config),
                 "--json-stats", str(stats_path)])
    assert code == 0
    assert json.loads(stats_path.read_text())["after"]["facets"] == 12


def test_config_for_another_pipeline_is_refused(cube_obj, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"kind": "periodic2d", "period": [1, 1]}))
    assert main(["decimate", "--input", cube_obj, "--config", str(config)]) == 2


def test_config_must_be_an_object(cube_obj, tmp_path):
    config = tmp_path / "run.json"
    config.write_text("[1, 2]")
    assert main(["decimate", "--input", cube_obj, "--config", str(config)]) == 2


def test_unknown_subcommand_exits_with_usage():
    with pytest.raises(SystemExit) as info:
        main(["smooth"])
    assert info.value.code == 2


def test_period_flag_parsing():
    assert parse_period("1,0.5") == [1.0, 0.5]
    with pytest.raises(SystemExit):
        main(["periodic2d", "--period", "1"])


def test_periodic2d_command(tmp_path):
    path = save_obj(generators.square_grid(4), tmp_path / "tile.obj")
    code = main(["periodic2d", "--input", path, "--period", "1,1", "--target-length", "0.3",
                 "--output", str(tmp_path / "out.obj")])
    assert code == 0
    assert (tmp_path / "out.obj").exists()


def test_remesh_embedded_command(tmp_path):
    path = save_medit(generators.cube_tet_grid(1), tmp_path / "cube.mesh")
    code = main(["remesh-embedded", "--input", path, "--target-length", "1.2",
                 "--output", str(tmp_path / "out.mesh"), "--surface-out", str(tmp_path / "surface.obj")])
    assert code == 0
    assert (tmp_path / "out.mesh").exists()
    assert (tmp_path / "surface.obj").exists()


def test_pipeline_error_exit_code(tmp_path):
    assert main(["decimate", "--input", str(tmp_path / "missing.obj"), "--target-faces", "10"]) == 1
