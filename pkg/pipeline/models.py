# file: pipeline/models.py
"""
Process-wide cache of reference buckling loads Λ⁺, so a sweep computes
the no-cutout baseline critical load of each plate only once.
"""

import logging
import threading

logger = logging.getLogger("hygro_xfem")


class ReferenceCache:
    """
    Singleton store of reference critical loads keyed by the reference case
    (same plate, mesh, layup, bc and load; no cutout; baseline environment).
    """
    _loads = {}
    _lock = threading.Lock()

    @classmethod
    def get_reference_load(cls, reference_case) -> float:
        """
        Get or compute Λ⁺ for a reference case.

        Returns:
            float: smallest positive buckling multiplier of the reference case

        Raises:
            PlateAnalysisError: the reference solve itself failed
        """
        with cls._lock:
            if reference_case in cls._loads:
                logger.debug(f"Reference load cache hit ({len(cls._loads)} cached)")
                return cls._loads[reference_case]

        from pipeline.solver.analysis import critical_loads

        logger.info(
            f"Computing reference buckling load: {reference_case.nx}×{reference_case.ny}, "
            f"bc={reference_case.bc.value}, load={reference_case.load.value}"
        )
        try:
            _, eig = critical_loads(reference_case)
        except Exception as e:
            logger.error(f"❌ Reference buckling solve failed: {e}")
            raise

        load = float(eig.values[0])
        cls.store(reference_case, load)
        return load

    @classmethod
    def store(cls, reference_case, load: float) -> None:
        with cls._lock:
            cls._loads.setdefault(reference_case, load)

    @classmethod
    def cleanup(cls) -> None:
        """Drop every cached load."""
        with cls._lock:
            if cls._loads:
                logger.info(f"Clearing {len(cls._loads)} cached reference loads")
            cls._loads.clear()

    @classmethod
    def is_cached(cls, reference_case) -> bool:
        return reference_case in cls._loads
