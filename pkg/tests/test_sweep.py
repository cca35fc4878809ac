# file: test_sweep.py
import numpy as np
import pytest

from app.config_parser import parse_config
from app.results_csv import error_row, write_results
from app.sweep import run_point, run_sweep
from pipeline.errors import SolverError
from pipeline.models import ReferenceCache
from pipeline.xfem_pipeline import PlateAnalysisPipeline

PLATE = "a = 1.0\nb = 1.0\na/h = 100\neigencount = 1\n"
BASE = PLATE + "nx = 10\nny = 10\n"


@pytest.fixture(autouse=True)
def clear_reference_cache():
    ReferenceCache.cleanup()
    yield
    ReferenceCache.cleanup()


# ------------------ Tests ------------------

def test_radius_sweep_rows():
    plan = parse_config(BASE + "r/a = [0, 0.1, 0.2, 0.3]\n").plan(prefix="radius")
    rows = run_sweep(plan)
    assert len(rows) == 4
    assert [row["case_id"] for row in rows] == plan.case_ids()
    assert [row["cutout_kind"] for row in rows] == ["none", "circle", "circle", "circle"]
    assert all(row["error"] == "" for row in rows)


def test_sweep_point_equals_single_run():
    config = parse_config(BASE + "C = [0, 0.1]\nr/a = 0.2\n")
    rows = run_sweep(config.plan())
    single = PlateAnalysisPipeline().process(config.point({"C": "0.1"}, "single").to_case())
    assert rows[1]["raw_value"] == pytest.approx(single.values[0], rel=1e-12)


def test_parallel_matches_serial():
    plan = parse_config(BASE + "T = [300, 325]\n").plan()
    serial = run_sweep(plan)
    parallel = run_sweep(plan, workers=2, backend="threading")
    assert [r["raw_value"] for r in serial] == pytest.approx([r["raw_value"] for r in parallel], rel=1e-12)


def test_buckling_sweep_shares_reference_load():
    plan = parse_config(BASE + "mode = buckling\nr/a = [0, 0.2]\nC = [0, 0.1]\n").plan()
    rows = run_sweep(plan)
    assert float(rows[0]["nondim_value"]) == 1.0
    assert all(0.0 < float(row["nondim_value"]) < 1.0 for row in rows[1:])


def test_failed_point_becomes_error_row():
    config = parse_config(BASE + "r/a = 0.6\n")
    rows = run_point(config.point({}, "too_big"))
    assert len(rows) == 1
    assert rows[0]["case_id"] == "too_big"
    assert rows[0]["error"].startswith("GeometryError")
    assert rows[0]["raw_value"] == ""


def test_error_row_and_writer(tmp_path):
    row = error_row({"case_id": "c1"}, SolverError("no positive buckling eigenvalue\namong 1"))
    assert row["error"] == "SolverError: no positive buckling eigenvalue among 1"
    path = tmp_path / "rows.csv"
    write_results(str(path), [row])
    write_results(str(path), [row], append=True)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# generated")
    assert lines[1].startswith("case_id,a,b,h,layup")
    assert len(lines) == 4


def test_ellipse_orientation_symmetry_for_angle_ply_lamina():
    config = parse_config(
        PLATE + "layup = 45\ncutout = ellipse\nd/a = 0.2\nd/e = 2\npsi = 0:90:15\nnx = 20\nny = 20\n"
    )
    rows = run_sweep(config.plan())
    omega = np.array([float(row["nondim_value"]) for row in rows])
    # ψ and 90° − ψ mirror each other about the 45° fibre direction
    assert len(omega) == 7
    for i in range(3):
        assert omega[i] == pytest.approx(omega[6 - i], rel=0.005)


if __name__ == "__main__":
    pytest.main()
