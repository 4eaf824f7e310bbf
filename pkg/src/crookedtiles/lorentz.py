"""
crookedtiles/lorentz
~~~~~~~~~~~~~~~~~~~~

Kernel conventions for the Lorentzian vector space V and for Minkowski space E.

V is R³ with the standard basis e1, e2 (spacelike) and e3 (timelike, future),
the inner product ``u·v = ux vx + uy vy − uz vz`` and the orientation
``det3(e1, e2, e3) = 1``. Null vectors are represented with z-component 1.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .typing import Coefficients, FloatArray
from .utilities import as_vector, DomainError, EPSILON

#: Gram matrix of the inner product in the standard basis.
G = np.diag([1.0, 1.0, -1.0])
_SIGNATURE = np.array([1.0, 1.0, -1.0])

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

VectorLike = Union[FloatArray, Sequence[float]]


class CausalClass(Enum):
    ZERO = "zero"
    SPACELIKE = "spacelike"
    NULL_FUTURE = "null-future"
    NULL_PAST = "null-past"
    TIMELIKE_FUTURE = "timelike-future"
    TIMELIKE_PAST = "timelike-past"

    @property
    def is_future(self) -> bool:
        return self in (CausalClass.NULL_FUTURE, CausalClass.TIMELIKE_FUTURE)


def inner(u: VectorLike, v: VectorLike) -> float:
    return float(np.asarray(u, dtype=float) @ G @ np.asarray(v, dtype=float))


def inner_rows(u: FloatArray, v: FloatArray) -> FloatArray:
    """Row-wise inner product of two arrays of shape ``(..., 3)``."""
    return np.einsum("...i,i,...i->...", u, _SIGNATURE, v)


def det3(u: VectorLike, v: VectorLike, w: VectorLike) -> float:
    return float(np.linalg.det(np.array([u, v, w], dtype=float)))


def cross(u: VectorLike, v: VectorLike) -> FloatArray:
    """The Lorentzian cross product, characterized by
    ``inner(cross(u, v), w) == det3(u, v, w)`` for every w.
    """
    return G @ np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def classify(v: VectorLike, eps: float = EPSILON) -> CausalClass:
    vector = as_vector(v)
    length_squared = float(vector @ vector)
    if np.sqrt(length_squared) < eps:
        return CausalClass.ZERO
    q = inner(vector, vector)
    tolerance = eps * max(1.0, length_squared)
    if q > tolerance:
        return CausalClass.SPACELIKE
    future = vector[2] > 0
    if q < -tolerance:
        return CausalClass.TIMELIKE_FUTURE if future else CausalClass.TIMELIKE_PAST
    return CausalClass.NULL_FUTURE if future else CausalClass.NULL_PAST


def lorentz_norm(v: VectorLike) -> float:
    return float(np.sqrt(abs(inner(v, v))))


def unit(v: VectorLike, eps: float = EPSILON) -> FloatArray:
    """Scale a spacelike or timelike vector to ``|v·v| = 1``."""
    vector = as_vector(v)
    kind = classify(vector, eps)
    if kind in (CausalClass.ZERO, CausalClass.NULL_FUTURE, CausalClass.NULL_PAST):
        raise DomainError(f"Cannot normalize {kind.value} vector {vector}")
    return vector / lorentz_norm(vector)


def future_unit(v: VectorLike, eps: float = EPSILON) -> FloatArray:
    vector = unit(v, eps)
    if classify(vector, eps) is CausalClass.TIMELIKE_PAST:
        vector = -vector
    if classify(vector, eps) is not CausalClass.TIMELIKE_FUTURE:
        raise DomainError(f"Expected a timelike vector, got {v}")
    return vector


def normalize_null(n: VectorLike, eps: float = EPSILON) -> FloatArray:
    """Representative of a null ray with z-component 1.

    Past-pointing input is mapped to the opposite, future-pointing ray.
    """
    vector = as_vector(n)
    if classify(vector, eps) not in (CausalClass.NULL_FUTURE, CausalClass.NULL_PAST):
        raise DomainError(f"Expected a null vector, got {vector}")
    return vector / vector[2]


def project_null(n: VectorLike, eps: float = EPSILON) -> FloatArray:
    """:func:`normalize_null`, then moved onto the light cone along the
    z = 1 section, so that ``inner(n, n)`` vanishes up to one rounding.

    Used for ideal points computed through several isometries.
    """
    vector = normalize_null(n, eps)
    radius = float(np.hypot(vector[0], vector[1]))
    return np.array([vector[0] / radius, vector[1] / radius, 1.0])


@dataclass(frozen=True, eq=False)
class NullFrame:
    """The null frame of a unit spacelike director.

    .. attribute:: s

       Unit spacelike director.

    .. attribute:: minus

       Future null vector in ``s^⊥`` with z-component 1.

    .. attribute:: plus

       Future null vector in ``s^⊥`` with z-component 1, labeled so that
       ``cross(plus, minus)`` is a positive multiple of ``s``.
    """

    s: FloatArray
    minus: FloatArray
    plus: FloatArray

    def opposite(self) -> "NullFrame":
        return NullFrame(-self.s, minus=self.plus, plus=self.minus)

    def translation(self, u_plus: float, u_minus: float) -> FloatArray:
        return u_minus * self.minus - u_plus * self.plus

    def semigroup_coefficients(self, v: VectorLike) -> Coefficients:
        """Coefficients ``(u_plus, u_minus)`` of ``v = u⁻ s⁻ − u⁺ s⁺ + a s``."""
        vector = as_vector(v)
        pairing = inner(self.plus, self.minus)
        u_minus = inner(vector, self.plus) / pairing
        u_plus = -inner(vector, self.minus) / pairing
        return u_plus, u_minus


def null_frame(s: VectorLike, eps: float = EPSILON) -> NullFrame:
    director = as_vector(s)
    if classify(director, eps) is not CausalClass.SPACELIKE:
        raise DomainError(f"Director must be spacelike, got {director}")
    director = director / lorentz_norm(director)
    # Future unit timelike vector orthogonal to s, and the spacelike vector
    # completing the orthonormal frame. The null lines of s^⊥ are t ± w.
    sz = director[2]
    t = (E3 + sz * director) / np.sqrt(1.0 + sz * sz)
    w = cross(director, t)
    plus, minus = t - w, t + w
    return NullFrame(director, minus=minus / minus[2], plus=plus / plus[2])


@dataclass(frozen=True, eq=False)
class Isometry:
    """A linear isometry of V given by its 3×3 matrix."""

    matrix: FloatArray

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix)

    def __call__(self, v: FloatArray) -> FloatArray:
        return np.asarray(v, dtype=float) @ self.matrix.T

    def inverse(self) -> "Isometry":
        return Isometry(G @ self.matrix.T @ G)

    def power(self, n: int) -> "Isometry":
        base = self if n >= 0 else self.inverse()
        return Isometry(np.linalg.matrix_power(base.matrix, abs(n)))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def lorentz_residual(self) -> float:
        return float(np.max(np.abs(self.matrix.T @ G @ self.matrix - G)))

    def distance(self, other: "Isometry") -> float:
        return float(np.max(np.abs(self.matrix - other.matrix)))


def linear_involution(u: VectorLike, eps: float = EPSILON) -> Isometry:
    axis = as_vector(u)
    kind = classify(axis, eps)
    if kind in (CausalClass.ZERO, CausalClass.NULL_FUTURE, CausalClass.NULL_PAST):
        raise DomainError(f"Involution axis must not be {kind.value}: {axis}")
    matrix = -np.eye(3) + 2.0 * np.outer(axis, G @ axis) / inner(axis, axis)
    return Isometry(matrix)


@dataclass(frozen=True, eq=False)
class Point:
    """A point of Minkowski space, stored as its displacement from ORIGIN."""

    coordinates: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", as_vector(self.coordinates))

    def __sub__(self, other: "Point") -> FloatArray:
        return self.coordinates - other.coordinates

    def __add__(self, vector: VectorLike) -> "Point":
        return Point(self.coordinates + as_vector(vector))

    def __repr__(self) -> str:
        return "Point({:.12g}, {:.12g}, {:.12g})".format(*self.coordinates)


ORIGIN = Point(np.zeros(3))


@dataclass(frozen=True, eq=False)
class AffineIsometry:
    """An affine isometry ``x ↦ linear(x) + translation`` of E.

    The translational part is measured at ORIGIN.
    """

    linear: Isometry
    translation: FloatArray

    @classmethod
    def identity(cls) -> "AffineIsometry":
        return cls(Isometry.identity(), np.zeros(3))

    @classmethod
    def pure_translation(cls, v: VectorLike) -> "AffineIsometry":
        return cls(Isometry.identity(), as_vector(v))

    def __matmul__(self, other: "AffineIsometry") -> "AffineIsometry":
        return AffineIsometry(
            self.linear @ other.linear,
            self.translation + self.linear(other.translation),
        )

    def __call__(self, point: Point) -> Point:
        return Point(self.transform(point.coordinates))

    def transform(self, coordinates: FloatArray) -> FloatArray:
        """Apply to an array of coordinates of shape ``(..., 3)``."""
        return self.linear(coordinates) + self.translation

    def inverse(self) -> "AffineIsometry":
        linear_inverse = self.linear.inverse()
        return AffineIsometry(linear_inverse, -linear_inverse(self.translation))

    def power(self, n: int) -> "AffineIsometry":
        base = self if n >= 0 else self.inverse()
        result = AffineIsometry.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def translation_at(self, origin: Point) -> FloatArray:
        return self(origin) - origin

    def distance(self, other: "AffineIsometry") -> float:
        return max(
            self.linear.distance(other.linear),
            float(np.max(np.abs(self.translation - other.translation))),
        )


def particle_involution(
    p: Point, t: VectorLike, eps: float = EPSILON
) -> AffineIsometry:
    """The involution of E fixing the particle ``p + R t`` pointwise."""
    direction = as_vector(t)
    scale = max(1.0, float(direction @ direction))
    if abs(inner(direction, direction) + 1.0) > eps * scale:
        raise DomainError(f"Particle direction must be unit timelike, got {direction}")
    linear = linear_involution(direction, eps)
    return AffineIsometry(linear, p.coordinates - linear(p.coordinates))
