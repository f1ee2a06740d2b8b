"""Shared fixtures"""
import pytest
from hypothesis import HealthCheck, settings

from src.apps.seam_decimate import build_seam_multimesh
from src.mesh import generators
from src.utils.logger import reset_logger

# The autouse log fixture is function scoped; it only redirects the run history.
settings.register_profile("multimesh", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("multimesh")


@pytest.fixture(autouse=True)
def run_log(tmp_path):
    """Keep the event history of every test inside its temporary directory."""
    return reset_logger(str(tmp_path / "logs" / "run_history.json"))


@pytest.fixture
def tet_boundary():
    return generators.tetrahedron_boundary()


@pytest.fixture
def hexagon():
    return generators.hexagon_fan()


@pytest.fixture
def quad():
    return generators.two_triangle_quad()


@pytest.fixture
def grid():
    return generators.square_grid(3)


@pytest.fixture
def cube_tets():
    return generators.cube_tet_grid(1)


@pytest.fixture
def seam_mm():
    return build_seam_multimesh(*generators.seam_patch())


@pytest.fixture
def cube_mm():
    return build_seam_multimesh(*generators.textured_cube())
