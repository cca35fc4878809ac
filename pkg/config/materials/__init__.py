"""
Material registry: built-in tables plus any table loaded from a file.
"""

import os
from typing import Dict, Optional

from config.materials.builtin import BUILTIN_MATERIALS, GRAPHITE_EPOXY, ISOTROPIC_STEEL
from config.materials.loader import DATA_DIR, load_material_table
from pipeline.errors import InvalidMaterialError
from pipeline.material.lamina import MaterialTable


def get_material_table(name: str, path: Optional[str] = None) -> MaterialTable:
    """
    Resolve a material by name, or load it from `path` when given.

    Names not built in are looked up as `<name>.txt` under config/data.
    """
    if path:
        return load_material_table(os.path.abspath(path))
    if name in BUILTIN_MATERIALS:
        return BUILTIN_MATERIALS[name]
    candidate = os.path.join(DATA_DIR, f"{name}.txt")
    if os.path.exists(candidate):
        return load_material_table(candidate)
    raise InvalidMaterialError(f"unknown material '{name}'")


def available_materials() -> Dict[str, MaterialTable]:
    return dict(BUILTIN_MATERIALS)


__all__ = [
    "GRAPHITE_EPOXY",
    "ISOTROPIC_STEEL",
    "available_materials",
    "get_material_table",
    "load_material_table",
]
