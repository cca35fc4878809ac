# file: pipeline/geometry/subcells.py
"""
Element classification against the level set and subcell triangulation
of cut elements.

Triangles live in parent coordinates (ξ, η) ∈ [−1, 1]².
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, List, Tuple

import numpy as np

from core.config import DEGENERATE_TRIANGLE_RATIO, ZERO_LEVEL_PERTURBATION
from pipeline.geometry.levelset import LevelSetField
from pipeline.geometry.mesh import StructuredMesh

logger = logging.getLogger("hygro_xfem")

PARENT_CORNERS = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
PARENT_AREA = 4.0


class ElementKind(IntEnum):
    """Integer values double as the VTK cell-data code."""

    STANDARD = 0
    SPLIT = 1
    SPLIT_BLENDING = 2
    VOID = 3


@dataclass(frozen=True, eq=False)
class ElementClassification:
    kinds: np.ndarray            # ElementKind per element
    phi: np.ndarray              # nodal level set after zero perturbation
    enriched_nodes: np.ndarray   # bool per node: belongs to a Split element

    def elements_of(self, kind: ElementKind) -> np.ndarray:
        return np.flatnonzero(self.kinds == kind)

    def counts(self) -> Dict[str, int]:
        return {kind.name.lower(): int(np.count_nonzero(self.kinds == kind)) for kind in ElementKind}


def classify_elements(mesh: StructuredMesh, level_set: LevelSetField) -> ElementClassification:
    """
    Standard: all nodal φ > 0 and no enriched node. Void: all φ < 0.
    Split: mixed signs. SplitBlending: uncut element sharing a node with a
    Split element. Nodal zeros are moved to the material side first.
    """
    phi = np.array(level_set.phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise ValueError("level set must be finite at every node")
    phi[phi == 0.0] = ZERO_LEVEL_PERTURBATION * mesh.element_size

    positive = phi[mesh.elements] > 0.0
    n_positive = positive.sum(axis=1)

    kinds = np.full(mesh.n_elements, ElementKind.SPLIT, dtype=int)
    kinds[n_positive == 4] = ElementKind.STANDARD
    kinds[n_positive == 0] = ElementKind.VOID

    enriched_nodes = np.zeros(mesh.n_nodes, dtype=bool)
    enriched_nodes[mesh.elements[kinds == ElementKind.SPLIT].ravel()] = True

    touches_enriched = enriched_nodes[mesh.elements].any(axis=1)
    kinds[(kinds == ElementKind.STANDARD) & touches_enriched] = ElementKind.SPLIT_BLENDING

    classification = ElementClassification(kinds=kinds, phi=phi, enriched_nodes=enriched_nodes)
    logger.debug(f"Element classification: {classification.counts()}")
    return classification


@dataclass(frozen=True, eq=False)
class SubTriangle:
    vertices: np.ndarray   # (3, 2) parent coordinates, counter-clockwise
    material: bool

    @property
    def area(self) -> float:
        return triangle_area(self.vertices)


def triangle_area(vertices: np.ndarray) -> float:
    (x0, y0), (x1, y1), (x2, y2) = vertices
    return 0.5 * ((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))


def _boundary_walk(phi_e: np.ndarray) -> List[Tuple[np.ndarray, bool, bool]]:
    """Corners and edge roots in counter-clockwise order as (point, is_root, positive)."""
    walk = []
    for k in range(4):
        m = (k + 1) % 4
        walk.append((PARENT_CORNERS[k], False, bool(phi_e[k] > 0.0)))
        if (phi_e[k] > 0.0) != (phi_e[m] > 0.0):
            t = phi_e[k] / (phi_e[k] - phi_e[m])
            root = PARENT_CORNERS[k] + t * (PARENT_CORNERS[m] - PARENT_CORNERS[k])
            walk.append((root, True, False))
    return walk


def _fan(polygon: List[np.ndarray], material: bool) -> List[SubTriangle]:
    vertices = np.asarray(polygon)
    if len(vertices) == 3:
        return [SubTriangle(vertices=vertices, material=material)]
    centroid = vertices.mean(axis=0)
    n = len(vertices)
    return [
        SubTriangle(vertices=np.array([centroid, vertices[k], vertices[(k + 1) % n]]), material=material)
        for k in range(n)
    ]


def triangulate_split_element(phi_e: np.ndarray) -> List[SubTriangle]:
    """
    Cut one element along the chord(s) of its linearly interpolated level set.

    Two edge roots give one material and one void polygon. Four roots (saddle)
    give a hexagon on the side of the element-centre sign plus two corner
    triangles on the other side. Each polygon is fan-triangulated from its
    vertex centroid; slivers below the degeneracy ratio are dropped.

    Args:
        phi_e: nodal φ of the element's four nodes (counter-clockwise)

    Returns:
        list of SubTriangle tagged material (φ > 0) or void
    """
    phi_e = np.asarray(phi_e, dtype=float)
    walk = _boundary_walk(phi_e)
    n_roots = sum(1 for _, is_root, _ in walk if is_root)
    center_positive = bool(phi_e.mean() > 0.0)

    triangles: List[SubTriangle] = []
    for side in (True, False):
        if n_roots == 4 and side != center_positive:
            for idx, (point, is_root, positive) in enumerate(walk):
                if not is_root and positive == side:
                    prev_root = walk[idx - 1][0]
                    next_root = walk[(idx + 1) % len(walk)][0]
                    triangles.extend(_fan([prev_root, point, next_root], side))
        else:
            polygon = [point for point, is_root, positive in walk if is_root or positive == side]
            if len(polygon) >= 3:
                triangles.extend(_fan(polygon, side))

    min_area = DEGENERATE_TRIANGLE_RATIO * PARENT_AREA
    return [tri for tri in triangles if tri.area >= min_area]


def triangulate(mesh: StructuredMesh, classification: ElementClassification) -> Dict[int, List[SubTriangle]]:
    """Subcell triangulation of every Split element, keyed by element id."""
    return {
        int(e): triangulate_split_element(classification.phi[mesh.elements[e]])
        for e in classification.elements_of(ElementKind.SPLIT)
    }
