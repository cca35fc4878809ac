# file: pipeline/geometry/quadrature.py
"""
Quadrature rules and the per-element quadrature plan.

  Standard / SplitBlending : 2×2 Gauss
  Split                    : triangle rule on every material subcell
  Void                     : no points

Split elements also carry a 6-point rule per material subcell for the
mass integrand, which is bi-quadratic.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from pipeline.elements.quad4 import shape_functions
from pipeline.geometry.mesh import StructuredMesh
from pipeline.geometry.subcells import ElementClassification, ElementKind, SubTriangle

logger = logging.getLogger("hygro_xfem")


def gauss_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """n×n tensor Gauss-Legendre rule on [−1, 1]²."""
    x, w = leggauss(n)
    xi, eta = np.meshgrid(x, x, indexing="xy")
    points = np.column_stack([xi.ravel(), eta.ravel()])
    weights = np.outer(w, w).ravel()
    return points, weights


# Reference triangle (0,0), (1,0), (0,1); weights sum to its area 1/2
TRIANGLE_3 = (
    np.array([[1.0 / 6.0, 1.0 / 6.0], [2.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 2.0 / 3.0]]),
    np.full(3, 1.0 / 6.0),
)

# Degree-4 symmetric rule
_A, _WA = 0.445948490915965, 0.223381589678011 / 2.0
_B, _WB = 0.091576213509771, 0.109951743655322 / 2.0
TRIANGLE_6 = (
    np.array([
        [_A, _A], [1.0 - 2.0 * _A, _A], [_A, 1.0 - 2.0 * _A],
        [_B, _B], [1.0 - 2.0 * _B, _B], [_B, 1.0 - 2.0 * _B],
    ]),
    np.array([_WA, _WA, _WA, _WB, _WB, _WB]),
)

TRIANGLE_RULES = {3: TRIANGLE_3, 6: TRIANGLE_6}


def collapsed_gauss_triangle(n_xi: int = 6, n_eta: int = 8) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss rule on the unit square collapsed onto the reference triangle (n_xi·n_eta points)."""
    x1, w1 = leggauss(n_xi)
    x2, w2 = leggauss(n_eta)
    u = 0.5 * (x1 + 1.0)
    v = 0.5 * (x2 + 1.0)
    U, V = np.meshgrid(u, v, indexing="ij")
    W = np.outer(0.5 * w1, 0.5 * w2) * (1.0 - V)
    points = np.column_stack([(U * (1.0 - V)).ravel(), V.ravel()])
    return points, W.ravel()


def map_triangle_rule(
    rule: Tuple[np.ndarray, np.ndarray], vertices: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Map a reference-triangle rule onto a triangle given in parent coordinates."""
    ref_points, ref_weights = rule
    v0, v1, v2 = vertices
    points = v0 + np.outer(ref_points[:, 0], v1 - v0) + np.outer(ref_points[:, 1], v2 - v0)
    jac = (v1[0] - v0[0]) * (v2[1] - v0[1]) - (v2[0] - v0[0]) * (v1[1] - v0[1])
    return points, ref_weights * abs(jac)


@dataclass(frozen=True, eq=False)
class ElementRule:
    points: np.ndarray      # (n, 2) parent coordinates
    weights: np.ndarray     # (n,) parent-space weights
    indicator: np.ndarray   # (n,) material indicator H

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    @classmethod
    def empty(cls) -> "ElementRule":
        return cls(points=np.zeros((0, 2)), weights=np.zeros(0), indicator=np.zeros(0))

    @classmethod
    def from_triangles(cls, triangles: List[SubTriangle], rule: Tuple[np.ndarray, np.ndarray]) -> "ElementRule":
        mapped = [map_triangle_rule(rule, tri.vertices) for tri in triangles if tri.material]
        if not mapped:
            return cls.empty()
        points = np.vstack([p for p, _ in mapped])
        weights = np.concatenate([w for _, w in mapped])
        return cls(points=points, weights=weights, indicator=np.ones_like(weights))


@dataclass(frozen=True, eq=False)
class ElementQuadrature:
    kind: ElementKind
    stiffness: ElementRule
    mass: ElementRule

    @property
    def is_empty(self) -> bool:
        return self.stiffness.size == 0


@dataclass(frozen=True, eq=False)
class QuadraturePlan:
    elements: List[ElementQuadrature]

    def __getitem__(self, e: int) -> ElementQuadrature:
        return self.elements[e]

    def __len__(self) -> int:
        return len(self.elements)

    def point_count(self) -> int:
        return sum(q.stiffness.size for q in self.elements)


def quadrature_plan(
    classification: ElementClassification,
    triangulation: Dict[int, List[SubTriangle]],
    triangle_points: int = 3,
) -> QuadraturePlan:
    """
    Build the per-element rules.

    Args:
        classification: element kinds
        triangulation: subcells of every Split element
        triangle_points: points per material subcell for stiffness-type integrands (3 or 6)
    """
    if triangle_points not in TRIANGLE_RULES:
        raise ValueError(f"triangle rule with {triangle_points} points is not available")

    gauss_points, gauss_weights = gauss_rule(2)
    full = ElementRule(points=gauss_points, weights=gauss_weights, indicator=np.ones(4))
    empty = ElementRule.empty()

    rules: List[ElementQuadrature] = []
    for e, kind in enumerate(classification.kinds):
        kind = ElementKind(int(kind))
        if kind is ElementKind.VOID:
            rules.append(ElementQuadrature(kind=kind, stiffness=empty, mass=empty))
        elif kind is ElementKind.SPLIT:
            triangles = triangulation[e]
            rules.append(ElementQuadrature(
                kind=kind,
                stiffness=ElementRule.from_triangles(triangles, TRIANGLE_RULES[triangle_points]),
                mass=ElementRule.from_triangles(triangles, TRIANGLE_6),
            ))
        else:
            rules.append(ElementQuadrature(kind=kind, stiffness=full, mass=full))

    plan = QuadraturePlan(elements=rules)
    logger.debug(f"Quadrature plan: {plan.point_count()} stiffness points over {len(plan)} elements")
    return plan


def material_area(mesh: StructuredMesh, plan: QuadraturePlan) -> float:
    """Σ w·|J| over the plan: the integrated material area of the plate."""
    total = 0.0
    for e, quad in enumerate(plan.elements):
        rule = quad.stiffness
        if rule.size == 0:
            continue
        _, dN = shape_functions(rule.points[:, 0], rule.points[:, 1])
        J = np.einsum("pak,ai->pki", dN, mesh.element_coords(e))
        total += float(np.sum(rule.weights * rule.indicator * np.linalg.det(J)))
    return total
