# file: pipeline/geometry/mesh.py
"""
Structured rectangular mesh of 4-node quadrilaterals over [0, a] × [0, b].

Node (i, j) has id j·(nx+1) + i; element (i, j) has id j·nx + i and
counter-clockwise connectivity starting at its lower-left node.
"""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from pipeline.errors import GeometryError

EDGES = ("x0", "xa", "y0", "yb")


@dataclass(frozen=True, eq=False)
class StructuredMesh:
    a: float
    b: float
    nx: int
    ny: int
    nodes: np.ndarray = field(repr=False)
    elements: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_elements(self) -> int:
        return self.elements.shape[0]

    @property
    def dx(self) -> float:
        return self.a / self.nx

    @property
    def dy(self) -> float:
        return self.b / self.ny

    @property
    def element_size(self) -> float:
        return min(self.dx, self.dy)

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.a, self.b))

    def node_id(self, i: int, j: int) -> int:
        return j * (self.nx + 1) + i

    def element_coords(self, e: int) -> np.ndarray:
        return self.nodes[self.elements[e]]

    def boundary_nodes(self, edge: str) -> np.ndarray:
        """Node ids on one plate edge: 'x0', 'xa', 'y0' or 'yb'."""
        i = np.arange(self.nx + 1)
        j = np.arange(self.ny + 1)
        if edge == "x0":
            return j * (self.nx + 1)
        if edge == "xa":
            return j * (self.nx + 1) + self.nx
        if edge == "y0":
            return i
        if edge == "yb":
            return self.ny * (self.nx + 1) + i
        raise ValueError(f"unknown edge '{edge}', expected one of {EDGES}")

    def all_boundary_nodes(self) -> np.ndarray:
        return np.unique(np.concatenate([self.boundary_nodes(edge) for edge in EDGES]))

    def node_elements(self) -> List[np.ndarray]:
        """Incident element ids per node."""
        incidence: Dict[int, List[int]] = {n: [] for n in range(self.n_nodes)}
        for e, conn in enumerate(self.elements):
            for n in conn:
                incidence[int(n)].append(e)
        return [np.array(incidence[n], dtype=int) for n in range(self.n_nodes)]


def build_mesh(a: float, b: float, nx: int, ny: int) -> StructuredMesh:
    """
    Uniform grid covering [0, a] × [0, b].

    Raises:
        GeometryError: non-positive side lengths or element counts
    """
    if a <= 0.0 or b <= 0.0:
        raise GeometryError(f"plate sides must be positive, got a={a}, b={b}")
    if nx < 1 or ny < 1:
        raise GeometryError(f"element counts must be >= 1, got nx={nx}, ny={ny}")

    xs = np.linspace(0.0, a, nx + 1)
    ys = np.linspace(0.0, b, ny + 1)
    X, Y = np.meshgrid(xs, ys)
    nodes = np.column_stack([X.ravel(), Y.ravel()])

    i, j = np.meshgrid(np.arange(nx), np.arange(ny))
    i, j = i.ravel(), j.ravel()
    n0 = j * (nx + 1) + i
    elements = np.column_stack([n0, n0 + 1, n0 + nx + 2, n0 + nx + 1]).astype(int)

    return StructuredMesh(a=float(a), b=float(b), nx=int(nx), ny=int(ny), nodes=nodes, elements=elements)
