# file: app/sweep.py
"""
Parametric sweeps: every point of a SweepPlan runs as an independent case
on a joblib worker pool. Rows come back in plan order whatever the
completion order, and a failing case yields an error row instead of
stopping the sweep.
"""

import logging
import time
from typing import Any, Dict, List, Optional

from joblib import Parallel, delayed
from pydantic import ValidationError

from app.models import RunConfig, SweepPlan
from app.results_csv import error_row
from pipeline.errors import GeometryError, PlateAnalysisError
from pipeline.xfem_pipeline import PlateAnalysisPipeline

logger = logging.getLogger("hygro_xfem")


def point_columns(point: RunConfig) -> Dict[str, Any]:
    """Case columns of a point whose case could not even be built."""
    try:
        cutout = point.cutout_spec()
        kind, r, d, e, psi = cutout.kind.value, cutout.radius, cutout.d, cutout.e, cutout.theta
    except GeometryError:
        kind, r, d, e, psi = (point.cutout.value if point.cutout else ""), "", "", "", point.psi
    return {
        "case_id": point.case_id,
        "a": point.a,
        "b": point.plate_b,
        "h": point.plate_h,
        "layup": "/".join(f"{angle:g}" for angle in point.layup),
        "cutout_kind": kind,
        "cutout_r": r,
        "cutout_d": d,
        "cutout_e": e,
        "cutout_psi": psi,
        "T": point.T,
        "C": point.C,
        "bc": point.bc.value,
        "mode": point.mode.value,
    }


def run_point(point: RunConfig, dump_dir: Optional[str] = None) -> List[Dict[str, Any]]:
    """Rows of one sweep point; solver and geometry failures become one error row."""
    try:
        case = point.to_case()
    except (ValidationError, PlateAnalysisError) as e:
        logger.error(f"❌ Case '{point.case_id}' rejected: {e}")
        return [error_row(point_columns(point), e)]

    try:
        result = PlateAnalysisPipeline(dump_dir=dump_dir).process(case)
    except PlateAnalysisError as e:
        return [error_row(point_columns(point), e)]
    return result.rows()


def run_sweep(
    plan: SweepPlan,
    workers: int = 1,
    dump_dir: Optional[str] = None,
    backend: str = "loky",
) -> List[Dict[str, Any]]:
    """
    Run every point of a plan.

    Args:
        plan: sweep plan
        workers: worker pool size (1 runs in-process)
        dump_dir: VTK dump directory, or None
        backend: joblib backend

    Returns:
        rows of all cases, in plan order
    """
    points = plan.points()
    logger.info(f"Sweep over {', '.join(plan.keys) or 'no keys'}: {len(points)} case(s), {workers} worker(s)")

    start = time.time()
    per_case = Parallel(n_jobs=workers, backend=backend)(
        delayed(run_point)(point, dump_dir) for point in points
    )

    rows = [row for case_rows in per_case for row in case_rows]
    failed = sum(1 for case_rows in per_case if case_rows and case_rows[0]["error"])
    if failed:
        logger.warning(f"⚠️ {failed} of {len(points)} case(s) failed, see the error column")
    logger.info(f"Sweep finished in {time.time() - start:.1f}s")
    return rows
