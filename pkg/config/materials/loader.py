import logging
import os
from functools import lru_cache
from typing import Dict, List, Tuple

from pipeline.errors import InvalidMaterialError
from pipeline.material.lamina import MaterialTable

logger = logging.getLogger("hygro_xfem")

GPA = 1.0e9

DATA_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "data"))

FIXED_KEYS = {"nu12", "alpha1", "alpha2", "beta1m", "beta2m", "rho", "g13_ratio", "g23_ratio"}
REQUIRED_KEYS = {"nu12", "alpha1", "alpha2", "beta1m", "beta2m"}
SECTIONS = ("fixed", "moisture", "temperature")


@lru_cache(None)
def load_material_table(path: str) -> MaterialTable:
    """
    Load a material table from the structured text format.

    Expected format:
        [fixed]
        nu12 = 0.3
        ...
        [moisture]
        # C     E1      E2      G12      (moduli in GPa)
        0.00    130.0   9.50    6.0
        [temperature]
        # T     E1      E2      G12
        300     130.0   9.50    6.0

    Args:
        path: file path

    Returns:
        MaterialTable with moduli in Pa, named after the file stem

    Raises:
        InvalidMaterialError: unknown section or key, malformed row, missing data
    """
    if not os.path.exists(path):
        raise InvalidMaterialError(f"Material file not found: {path}")

    fixed: Dict[str, float] = {}
    rows: Dict[str, List[Tuple[float, float, float, float]]] = {"moisture": [], "temperature": []}
    section = None

    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip().lower()
                if section not in SECTIONS:
                    raise InvalidMaterialError(f"{path}:{lineno}: unknown section [{section}]")
                continue

            if section is None:
                raise InvalidMaterialError(f"{path}:{lineno}: data before any section")

            if section == "fixed":
                key, sep, value = line.partition("=")
                key = key.strip()
                if not sep or key not in FIXED_KEYS:
                    raise InvalidMaterialError(f"{path}:{lineno}: unknown key '{key}'")
                try:
                    fixed[key] = float(value)
                except ValueError:
                    raise InvalidMaterialError(f"{path}:{lineno}: '{value.strip()}' is not a number")
                continue

            parts = line.split()
            if len(parts) != 4:
                raise InvalidMaterialError(
                    f"{path}:{lineno}: expected 4 columns (key, E1, E2, G12), got {len(parts)}"
                )
            try:
                key, e1, e2, g12 = (float(p) for p in parts)
            except ValueError:
                raise InvalidMaterialError(f"{path}:{lineno}: malformed row '{line}'")
            rows[section].append((key, e1 * GPA, e2 * GPA, g12 * GPA))

    missing = REQUIRED_KEYS - fixed.keys()
    if missing:
        raise InvalidMaterialError(f"{path}: missing fixed keys {sorted(missing)}")

    table = MaterialTable(
        moisture_rows=tuple(rows["moisture"]),
        temperature_rows=tuple(rows["temperature"]),
        name=os.path.splitext(os.path.basename(path))[0],
        **fixed,
    )
    logger.debug(
        f"Loaded material '{table.name}': {len(table.moisture_rows)} moisture rows, "
        f"{len(table.temperature_rows)} temperature rows"
    )
    return table
