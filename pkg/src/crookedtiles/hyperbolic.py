"""
crookedtiles/hyperbolic
~~~~~~~~~~~~~~~~~~~~~~~

The hyperboloid model of the hyperbolic plane: halfplanes, ideal points,
ideal triangles and the isometries of SO(2,1).
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .lorentz import (
    CausalClass,
    classify,
    cross,
    inner,
    Isometry,
    normalize_null,
    project_null,
    unit,
    VectorLike,
)
from .typing import FloatArray
from .utilities import (
    DegenerateConfigurationError,
    DomainError,
    EPSILON,
    scale_of,
)

# Basis of the traceless 2×2 matrices. The pairing ½tr(XY) has signature
# (2,1) on it and ½tr(E3 E3) = −1.
_SL2_BASIS = (
    np.array([[1.0, 0.0], [0.0, -1.0]]),
    np.array([[0.0, 1.0], [1.0, 0.0]]),
    np.array([[0.0, 1.0], [-1.0, 0.0]]),
)
_SL2_SIGNS = (1.0, 1.0, -1.0)


class IsometryClass(Enum):
    IDENTITY = "identity"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


def sl2_coordinates(y: FloatArray) -> FloatArray:
    """Coordinates in V of a traceless 2×2 matrix."""
    return np.array(
        [sign * 0.5 * float(np.trace(y @ e)) for sign, e in zip(_SL2_SIGNS, _SL2_BASIS)]
    )


def _unimodular(a: Sequence[Sequence[float]]) -> FloatArray:
    matrix = np.asarray(a, dtype=float)
    if matrix.shape != (2, 2):
        raise DomainError(f"Expected a 2x2 matrix, got shape {matrix.shape}")
    determinant = float(np.linalg.det(matrix))
    if abs(determinant - 1.0) >= 1e-9 * max(1.0, float(np.max(np.abs(matrix))) ** 2):
        raise DomainError(f"Matrix must have determinant 1, got {determinant}")
    return matrix


def from_sl2(a: Sequence[Sequence[float]]) -> Isometry:
    """The adjoint action of a unimodular 2×2 matrix as an element of SO(2,1).

    ``a`` and ``-a`` give the same isometry.
    """
    matrix = _unimodular(a)
    inverse = np.array([[matrix[1, 1], -matrix[0, 1]], [-matrix[1, 0], matrix[0, 0]]])
    columns = [sl2_coordinates(matrix @ e @ inverse) for e in _SL2_BASIS]
    return Isometry(np.array(columns).T)


def neutral_vector_sl2(a: Sequence[Sequence[float]]) -> FloatArray:
    """:func:`neutral_vector` of ``from_sl2(a)``, computed from the traceless
    part of ``a``, which commutes with ``a``.

    This stays accurate for long words whose adjoint matrices have entries
    close to the limits of double precision.
    """
    matrix = _unimodular(a)
    trace = float(np.trace(matrix))
    if abs(trace) <= 2.0:
        raise DomainError(f"Matrix with trace {trace} is not hyperbolic")
    traceless = sl2_coordinates(matrix - 0.5 * trace * np.eye(2))
    return -np.sign(trace) * traceless / np.sqrt(0.25 * trace * trace - 1.0)


def _check_future_preserving(X: Isometry) -> None:
    if X.matrix[2, 2] <= 0:
        raise DomainError("Isometry does not preserve the future cone")


def classify_isometry(X: Isometry, tol: float = EPSILON) -> IsometryClass:
    """Classify by trace.

    The spectrum of an element of SO(2,1) is ``{1, λ, 1/λ}`` with
    ``λ + 1/λ = tr − 1``, so ``tr − 3`` separates the three types.
    """
    _check_future_preserving(X)
    scale = scale_of(X.matrix)
    if np.max(np.abs(X.matrix - np.eye(3))) <= tol * scale:
        return IsometryClass.IDENTITY
    deviation = X.trace - 3.0
    if deviation > tol * scale:
        return IsometryClass.HYPERBOLIC
    if abs(deviation) <= tol * scale:
        return IsometryClass.PARABOLIC
    return IsometryClass.ELLIPTIC


def spectral_radius(X: Isometry) -> float:
    half_sum = X.trace - 1.0
    if half_sum <= 2.0:
        return 1.0
    return float((half_sum + np.sqrt(half_sum * half_sum - 4.0)) / 2.0)


def is_scale_ambiguous(X: Isometry, tol: float = EPSILON) -> bool:
    return classify_isometry(X, tol) is IsometryClass.PARABOLIC


def _dominant_column(matrix: FloatArray) -> FloatArray:
    return matrix[:, int(np.argmax(np.linalg.norm(matrix, axis=0)))]


def fixed_ideal_points(
    X: Isometry, tol: float = EPSILON, kind: Optional[IsometryClass] = None
) -> List[FloatArray]:
    """Fixed points on the ideal boundary.

    A hyperbolic element gives ``[attracting, repelling]``, a parabolic one
    gives its single fixed point.

    Each point spans the image of a product of the factors ``X − μ`` over
    the other eigenvalues μ. That image has rank one, which stays well
    conditioned as X approaches a parabolic, where the null space of
    ``X − λ`` does not.

    ``kind`` replaces the trace test when the type is known otherwise.
    """
    if kind is None:
        kind = classify_isometry(X, tol)
    shifted = X.matrix - np.eye(3)
    if kind is IsometryClass.HYPERBOLIC:
        radius = spectral_radius(X)
        attracting = _dominant_column(shifted @ (X.matrix - np.eye(3) / radius))
        repelling = _dominant_column(shifted @ (X.matrix - radius * np.eye(3)))
        return [project_null(attracting, tol), project_null(repelling, tol)]
    if kind is IsometryClass.PARABOLIC:
        return [project_null(_dominant_column(shifted @ shifted), tol)]
    raise DomainError(f"A {kind.value} isometry has no isolated ideal fixed points")


def neutral_vector(X: Isometry, tol: float = EPSILON) -> FloatArray:
    """The fixed vector ``X⁰``.

    For hyperbolic X this is the unit spacelike vector ``cross(X⁻, X⁺)``
    normalized, which satisfies ``det3(u, Xu, X⁰) > 0`` for future timelike u
    off the axis. For parabolic X the z-normalized null fixed vector is
    returned; its scale is a convention (see :func:`is_scale_ambiguous`).
    """
    kind = classify_isometry(X, tol)
    if kind is IsometryClass.HYPERBOLIC:
        attracting, repelling = fixed_ideal_points(X, tol)
        return unit(cross(repelling, attracting))
    if kind is IsometryClass.PARABOLIC:
        return fixed_ideal_points(X, tol)[0]
    raise DomainError(f"A {kind.value} isometry has no neutral vector")


@dataclass(frozen=True, eq=False)
class Halfplane:
    """The halfplane ``{v ∈ H² | v·s ≥ 0}`` of a unit spacelike vector s."""

    s: FloatArray

    def contains_ideal(self, n: VectorLike, eps: float = EPSILON) -> bool:
        return inner(n, self.s) >= -eps * scale_of(np.asarray(n, dtype=float))


def halfplane_contains(h: Halfplane, w: VectorLike, eps: float = EPSILON) -> bool:
    if classify(w, eps) is not CausalClass.TIMELIKE_FUTURE:
        raise DomainError(f"Expected a future timelike vector, got {w}")
    return inner(w, h.s) >= -eps


@dataclass(frozen=True, eq=False)
class IdealTriangle:
    """An ideal triangle given by its outward unit sides and its cusps."""

    sides: Tuple[FloatArray, FloatArray, FloatArray]
    cusps: Tuple[FloatArray, FloatArray, FloatArray]

    def gram(self) -> FloatArray:
        return np.array([[inner(u, v) for v in self.sides] for u in self.sides])

    def endpoints(self, index: int, tol: float = 1e-7) -> Tuple[FloatArray, FloatArray]:
        side = self.sides[index]
        on_side = [n for n in self.cusps if abs(inner(n, side)) <= tol * scale_of(n)]
        if len(on_side) != 2:
            raise DegenerateConfigurationError(f"Side {index} does not meet two cusps")
        return on_side[0], on_side[1]

    def halfplanes(self) -> Tuple[Halfplane, Halfplane, Halfplane]:
        first, second, third = (Halfplane(s) for s in self.sides)
        return first, second, third


def oriented_side(m1: FloatArray, m2: FloatArray, interior: FloatArray) -> FloatArray:
    """Unit normal of the geodesic through two ideal points, pointing away
    from ``interior``.
    """
    normal = cross(m1, m2)
    if classify(normal) is not CausalClass.SPACELIKE:
        raise DomainError("Ideal points must be distinct")
    normal = unit(normal)
    return -normal if inner(interior, normal) > 0 else normal


def ideal_triangle_from_cusps(
    n1: VectorLike, n2: VectorLike, n3: VectorLike, eps: float = EPSILON
) -> IdealTriangle:
    cusps = tuple(normalize_null(n, eps) for n in (n1, n2, n3))
    incenter = cusps[0] + cusps[1] + cusps[2]
    pairs = ((0, 1), (0, 2), (1, 2))
    sides = tuple(oriented_side(cusps[i], cusps[j], incenter) for i, j in pairs)
    return IdealTriangle(sides, cusps)  # type: ignore[arg-type]


def klein_coordinates(v: FloatArray) -> FloatArray:
    """Projection ``(x/z, y/z)`` of arrays of shape ``(..., 3)``."""
    return v[..., :2] / v[..., 2:3]


def geodesic_points(m1: FloatArray, m2: FloatArray, count: int = 32) -> FloatArray:
    # Geodesics are chords in the Klein model.
    start, end = klein_coordinates(m1), klein_coordinates(m2)
    weights = np.linspace(0.0, 1.0, count)[:, None]
    return (1.0 - weights) * start + weights * end
