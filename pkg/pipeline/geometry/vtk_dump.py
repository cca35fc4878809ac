# file: pipeline/geometry/vtk_dump.py
"""
Legacy VTK ASCII dump of the mesh with point and cell fields.
"""

import logging
from typing import Dict, Optional

import numpy as np

from pipeline.geometry.mesh import StructuredMesh

logger = logging.getLogger("hygro_xfem")


def write_vtk(
    path: str,
    mesh: StructuredMesh,
    point_data: Optional[Dict[str, np.ndarray]] = None,
    cell_data: Optional[Dict[str, np.ndarray]] = None,
    title: str = "hygro_xfem",
) -> str:
    """
    Write an unstructured-grid file of quads.

    Args:
        path: output file (".vtk" appended when missing)
        mesh: structured mesh
        point_data: name -> (n_nodes,) values, e.g. φ or a mode shape
        cell_data: name -> (n_elements,) values, e.g. classification codes

    Returns:
        the written path
    """
    import vtk

    if not path.endswith(".vtk"):
        path = path + ".vtk"

    grid = vtk.vtkUnstructuredGrid()
    points = vtk.vtkPoints()
    for x, y in mesh.nodes:
        points.InsertNextPoint(float(x), float(y), 0.0)
    grid.SetPoints(points)

    cells = vtk.vtkCellArray()
    for conn in mesh.elements:
        cells.InsertNextCell(4, [int(n) for n in conn])
    grid.SetCells(vtk.VTK_QUAD, cells)

    for name, values in (point_data or {}).items():
        values = np.asarray(values)
        if values.shape[0] != mesh.n_nodes:
            raise ValueError(f"point field '{name}' has {values.shape[0]} values, mesh has {mesh.n_nodes} nodes")
        array = vtk.vtkDoubleArray()
        array.SetName(name)
        for v in values:
            array.InsertNextValue(float(v))
        grid.GetPointData().AddArray(array)

    for name, values in (cell_data or {}).items():
        values = np.asarray(values)
        if values.shape[0] != mesh.n_elements:
            raise ValueError(f"cell field '{name}' has {values.shape[0]} values, mesh has {mesh.n_elements} elements")
        array = vtk.vtkIntArray() if np.issubdtype(values.dtype, np.integer) else vtk.vtkDoubleArray()
        array.SetName(name)
        for v in values:
            array.InsertNextValue(v.item())
        grid.GetCellData().AddArray(array)

    writer = vtk.vtkUnstructuredGridWriter()
    writer.SetFileName(path)
    writer.SetHeader(title)
    writer.SetFileTypeToASCII()
    writer.SetInputData(grid)
    writer.Write()

    logger.debug(f"Wrote VTK dump: {path}")
    return path
