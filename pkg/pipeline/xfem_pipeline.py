# file: xfem_pipeline.py
import logging
import os
import time
from typing import Optional

from pipeline.elements.quad4 import W
from pipeline.errors import PlateAnalysisError
from pipeline.geometry.vtk_dump import write_vtk
from pipeline.solver.analysis import AnalysisResult, run_case
from pipeline.solver.case import AnalysisCase, SolveMode

logger = logging.getLogger("hygro_xfem")


class PlateAnalysisPipeline:
    def __init__(self, dump_dir: Optional[str] = None):
        """
        Initialize the pipeline.

        Args:
            dump_dir: directory for VTK dumps of φ, element classes and mode
                      shapes; no dumps when None
        """
        self.dump_dir = dump_dir
        if dump_dir:
            os.makedirs(dump_dir, exist_ok=True)
        logger.debug(f"PlateAnalysisPipeline initialized (dumps: {dump_dir or 'off'})")

    def process(self, case: AnalysisCase) -> AnalysisResult:
        """
        Run one case end to end.

        Args:
            case: analysis case

        Returns:
            AnalysisResult
        """
        start_time = time.time()
        logger.info(
            f"Processing case '{case.case_id}': {case.mode.value}, {case.nx}×{case.ny}, "
            f"cutout={case.cutout.kind.value}, T={case.temperature:g} K, C={case.moisture:g} %"
        )

        try:
            result = run_case(case)
        except PlateAnalysisError as e:
            logger.error(f"❌ Case '{case.case_id}' failed: {e}")
            raise

        if self.dump_dir:
            self.dump(result)

        result.elapsed = time.time() - start_time
        logger.info(f"✅ Case '{case.case_id}' done in {result.elapsed:.2f}s")
        return result

    def dump(self, result: AnalysisResult) -> str:
        """Write φ, element classes and every reported w0 mode shape."""
        model = result.model
        point_data = {"phi": model.classification.phi}
        label = "w0_static" if result.mode is SolveMode.STATIC else "w0_mode"
        if result.modes is not None:
            for k in range(result.modes.shape[1]):
                point_data[f"{label}_{k + 1}"] = result.mode_shape(k, W)

        path = os.path.join(self.dump_dir, f"{result.case.case_id}.vtk")
        return write_vtk(
            path,
            model.mesh,
            point_data=point_data,
            cell_data={"element_kind": model.classification.kinds.astype(int)},
        )


# For debugging
if __name__ == "__main__":
    from app.logging_config import setup_logging

    setup_logging()
    pipeline = PlateAnalysisPipeline()
    demo = AnalysisCase(a=1.0, b=1.0, h=0.01, layup=(0.0, 90.0, 90.0, 0.0), nx=10, ny=10, moisture=0.1)
    res = pipeline.process(demo)
    print(f"Ω = {res.nondimensional}")
