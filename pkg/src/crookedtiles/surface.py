"""
crookedtiles/surface
~~~~~~~~~~~~~~~~~~~~

Fuchsian one-holed torus groups, their Coxeter extensions by three point
involutions, the fixed point cycle and the fundamental ideal triangle and
quadrilateral.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .farey import BASE_TRIPLE, BasicTriple, F2Word
from .hyperbolic import (
    classify_isometry,
    fixed_ideal_points,
    from_sl2,
    Halfplane,
    IdealTriangle,
    IsometryClass,
    neutral_vector,
    neutral_vector_sl2,
    oriented_side,
)
from .lorentz import (
    CausalClass,
    classify,
    cross,
    future_unit,
    inner,
    inner_rows,
    Isometry,
    linear_involution,
    project_null,
    unit,
)
from .typing import FloatArray
from .utilities import ConstructionError, DomainError, EPSILON, scale_of

logger = logging.getLogger(__name__)

#: Trace triple of the modular torus, the boundary case ``tr K = −2``.
MODULAR_TORUS_TRACES = (3.0, 3.0, 3.0)

_Matrix2 = Sequence[Sequence[float]]


def _sl2_inverse(m: FloatArray) -> FloatArray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


@dataclass(frozen=True, eq=False)
class FuchsianRep:
    """A representation of ``F2 = <a, b>`` in SL(2,R), with its image in SO(2,1).

    .. attribute:: a_mat

       The 2×2 matrix of ``a``.

    .. attribute:: b_mat

       The 2×2 matrix of ``b``.
    """

    a_mat: FloatArray
    b_mat: FloatArray

    @classmethod
    def from_matrices(cls, a: _Matrix2, b: _Matrix2) -> "FuchsianRep":
        a_mat, b_mat = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        for name, m in (("a", a_mat), ("b", b_mat)):
            if m.shape != (2, 2) or abs(np.linalg.det(m) - 1.0) >= 1e-9:
                raise ConstructionError(f"Matrix for {name} is not unimodular 2x2")
        return cls(a_mat, b_mat)

    @property
    def traces(self) -> Tuple[float, float, float]:
        return (
            float(np.trace(self.a_mat)),
            float(np.trace(self.b_mat)),
            float(np.trace(self.a_mat @ self.b_mat)),
        )

    @property
    def commutator_trace(self) -> float:
        return float(np.trace(self.evaluate_sl2(F2Word("abAB"))))

    @property
    def A(self) -> Isometry:
        return from_sl2(self.a_mat)

    @property
    def B(self) -> Isometry:
        return from_sl2(self.b_mat)

    @property
    def C(self) -> Isometry:
        return from_sl2(_sl2_inverse(self.a_mat @ self.b_mat))

    @property
    def K(self) -> Isometry:
        return evaluate_word(self, F2Word("abAB"))

    def evaluate_sl2(self, w: F2Word) -> FloatArray:
        letters = {
            "a": self.a_mat,
            "A": _sl2_inverse(self.a_mat),
            "b": self.b_mat,
            "B": _sl2_inverse(self.b_mat),
        }
        result = np.eye(2)
        for letter in w.letters:
            result = result @ letters[letter]
        return result


def evaluate_word(rep: FuchsianRep, w: F2Word) -> Isometry:
    A, B = rep.A, rep.B
    letters = {"a": A, "A": A.inverse(), "b": B, "B": B.inverse()}
    result = Isometry.identity()
    for letter in w.letters:
        result = result @ letters[letter]
    return result


def is_admissible(x: float, y: float, z: float, tol: float = EPSILON) -> bool:
    """Whether the traces define a one-holed torus with ``tr K ≤ −2``."""
    scale = max(1.0, x * y * z)
    return min(x, y, z) > 2.0 and x * x + y * y + z * z - x * y * z <= tol * scale


def rep_from_traces(x: float, y: float, z: float, tol: float = EPSILON) -> FuchsianRep:
    """The representation with ``tr a = x``, ``tr b = y`` and ``tr ab = z``.

    ``a`` is diagonal and the upper right entry of ``b`` is 1.
    """
    if not is_admissible(x, y, z, tol):
        raise ConstructionError(
            f"Traces ({x}, {y}, {z}) do not define a one-holed torus"
        )
    eigenvalue = (x + np.sqrt(x * x - 4.0)) / 2.0
    p = (z - y / eigenvalue) / (eigenvalue - 1.0 / eigenvalue)
    s = y - p
    r = p * s - 1.0
    if abs(r) < 1e-12:
        raise ConstructionError(f"Traces ({x}, {y}, {z}) give a reducible pair")
    a_mat = np.diag([eigenvalue, 1.0 / eigenvalue])
    b_mat = np.array([[p, 1.0], [r, s]])
    return FuchsianRep(a_mat, b_mat)


def modular_torus() -> FuchsianRep:
    return FuchsianRep.from_matrices([[1, 1], [1, 2]], [[1, -1], [-1, 2]])


@dataclass(frozen=True, eq=False)
class CoxeterExtension:
    """Three involutions ``ι0, ι1, ι2`` with ``A = ι2ι0``, ``B = ι0ι1`` and
    ``C = ι1ι2``, and their fixed future unit timelike vectors.

    .. attribute:: boundary_trace

       Trace of the commutator ``K`` when the extension comes from a
       representation, else None.
    """

    iotas: Tuple[Isometry, Isometry, Isometry]
    fixed: Tuple[FloatArray, FloatArray, FloatArray]
    boundary_trace: Optional[float] = None

    @classmethod
    def from_neutral_vectors(
        cls, a0: FloatArray, b0: FloatArray, c0: FloatArray
    ) -> "CoxeterExtension":
        """The involutions about the pairwise intersections of the axes of a
        basic triple, given by its neutral vectors.
        """
        fixed = []
        pairs = (("A and B", a0, b0), ("B and C", b0, c0), ("C and A", c0, a0))
        for name, u, v in pairs:
            meet = cross(u, v)
            if classify(meet) not in (
                CausalClass.TIMELIKE_FUTURE,
                CausalClass.TIMELIKE_PAST,
            ):
                raise ConstructionError(f"Axes of {name} do not meet")
            fixed.append(future_unit(meet))
        iotas = tuple(linear_involution(t) for t in fixed)
        return cls(iotas, tuple(fixed))  # type: ignore[arg-type]

    @classmethod
    def from_generators(cls, A: Isometry, B: Isometry) -> "CoxeterExtension":
        C = (A @ B).inverse()
        return cls.from_neutral_vectors(
            neutral_vector(A), neutral_vector(B), neutral_vector(C)
        )

    @classmethod
    def for_triple(cls, rep: FuchsianRep, triple: BasicTriple) -> "CoxeterExtension":
        # Neutral vectors come from the 2×2 words, which stay well conditioned.
        words = tuple(rep.evaluate_sl2(w) for w in triple)
        ext = cls.from_neutral_vectors(*(neutral_vector_sl2(m) for m in words))
        return cls(ext.iotas, ext.fixed, rep.commutator_trace)

    def neutral_vectors(self) -> Tuple[FloatArray, FloatArray, FloatArray]:
        """``(A⁰, B⁰, C⁰)`` from the fixed points: ``ιⱼιᵢ`` translates along
        the geodesic from ``tᵢ`` towards ``tⱼ``.
        """
        t0, t1, t2 = self.fixed
        return unit(cross(t0, t2)), unit(cross(t1, t0)), unit(cross(t2, t1))

    @property
    def A(self) -> Isometry:
        return self.iotas[2] @ self.iotas[0]

    @property
    def B(self) -> Isometry:
        return self.iotas[0] @ self.iotas[1]

    @property
    def C(self) -> Isometry:
        return self.iotas[1] @ self.iotas[2]

    @property
    def product(self) -> Isometry:
        """``ι0ι1ι2``, whose square is ``K⁻¹``."""
        return self.iotas[0] @ self.iotas[1] @ self.iotas[2]

    def rotated(self) -> "CoxeterExtension":
        """Relabel so that ``(A, B, C)`` becomes ``(B, C, A)``."""
        i0, i1, i2 = self.iotas
        t0, t1, t2 = self.fixed
        return CoxeterExtension((i1, i2, i0), (t1, t2, t0), self.boundary_trace)

    def evaluate(self, word: Sequence[int]) -> Isometry:
        result = Isometry.identity()
        for index in word:
            result = result @ self.iotas[index]
        return result

    def residuals(self) -> Tuple[float, ...]:
        """Deviation of each ``ιᵢ²`` from the identity and of each ``ιᵢ tᵢ``
        from ``tᵢ``.
        """
        identity = Isometry.identity()
        squares = tuple((iota @ iota).distance(identity) for iota in self.iotas)
        fixes = tuple(
            float(np.max(np.abs(iota(t) - t)))
            for iota, t in zip(self.iotas, self.fixed)
        )
        return squares + fixes


def coxeter_extension(rep: FuchsianRep) -> CoxeterExtension:
    """The extension of ``(a, b, BA)``.

    ``ι0`` is the half turn about the meeting point of the axes of A and B.
    Building ``ι1 = ι0B`` and ``ι2 = Aι0`` from it gives the same involutions
    as the half turns about the other two meeting points used here.
    """
    return CoxeterExtension.for_triple(rep, BASE_TRIPLE)


def _rotate(ext: CoxeterExtension, times: int) -> CoxeterExtension:
    for _ in range(times):
        ext = ext.rotated()
    return ext


def flip_involutions(ext: CoxeterExtension, slot: int = 2) -> CoxeterExtension:
    """The involutions of the flipped superbasis.

    For slot 2 this is ``(ι0, ι1, ι2) ↦ (ι0, ι0ι2ι0, ι1)``, which induces
    ``(A, B, C) ↦ (B⁻¹, A, A⁻¹B)``; other slots are rotated like
    :func:`crookedtiles.farey.flip`.
    """
    if slot not in (0, 1, 2):
        raise DomainError(f"Slot must be 0, 1 or 2, got {slot}")
    rotated = _rotate(ext, (slot + 1) % 3)
    i0, i1, i2 = rotated.iotas
    t0, t1, t2 = rotated.fixed
    flipped = CoxeterExtension((i0, i0 @ i2 @ i0, i1), (t0, i0(t2), t1))
    return _rotate(flipped, 2 * (slot + 1) % 3)


class FixedPointChoice(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True, eq=False)
class FixedPointCycle:
    """The cycle ``[n], ι2[n], ι1ι2[n], ι0ι1ι2[n] = [n]`` of ideal points."""

    n: FloatArray
    points: Tuple[FloatArray, FloatArray, FloatArray, FloatArray]
    parabolic: bool

    def closure_residual(self) -> float:
        return float(np.max(np.abs(self.points[3] - self.n)))


def boundary_class(ext: CoxeterExtension, tol: float = EPSILON) -> IsometryClass:
    """Type of ``ι0ι1ι2``.

    Its square is conjugate to ``K⁻¹``, so an extension of a representation
    is classified by the trace of K, which is the same for every superbasis.
    Other extensions are classified by the trace of the product.
    """
    if ext.boundary_trace is None:
        return classify_isometry(ext.product, tol)
    excess = ext.boundary_trace + 2.0
    scale = max(1.0, abs(ext.boundary_trace))
    if excess > tol * scale:
        return IsometryClass.ELLIPTIC
    if excess >= -tol * scale:
        return IsometryClass.PARABOLIC
    return IsometryClass.HYPERBOLIC


def fixed_point_cycle(
    ext: CoxeterExtension,
    choice: FixedPointChoice = FixedPointChoice.PLUS,
    tol: float = EPSILON,
) -> FixedPointCycle:
    """The fixed point of ``ι0ι1ι2`` and its cycle.

    ``tol`` decides the type of the product and bounds how far a computed
    ideal point may be from the light cone before it is projected onto it.
    """
    kind = boundary_class(ext, tol)
    if kind not in (IsometryClass.HYPERBOLIC, IsometryClass.PARABOLIC):
        raise DomainError(f"ι0ι1ι2 is {kind.value}, no fixed point cycle exists")
    parabolic = kind is IsometryClass.PARABOLIC
    product = ext.product
    points = fixed_ideal_points(product, tol, kind)
    n = points[1] if choice is FixedPointChoice.MINUS and not parabolic else points[0]
    logger.debug(
        "Fixed point of ι0ι1ι2 (parabolic %s, %s): %s", parabolic, choice.value, n
    )
    _, i1, i2 = ext.iotas
    images = tuple(project_null(g(n), tol) for g in (i2, i1 @ i2, product))
    return FixedPointCycle(n, (n,) + images, parabolic)  # type: ignore[arg-type]


def fundamental_triangle(
    ext: CoxeterExtension, n: FloatArray, eps: float = EPSILON
) -> IdealTriangle:
    """The ideal triangle with cusps ``(n, ι0n, ι2n)``; side i contains ``tᵢ``."""
    i0, _, i2 = ext.iotas
    cusps = tuple(project_null(v, eps) for v in (n, i0(n), i2(n)))
    incenter = cusps[0] + cusps[1] + cusps[2]
    pairs = ((0, 1), (1, 2), (2, 0))
    sides = tuple(oriented_side(cusps[i], cusps[j], incenter) for i, j in pairs)
    return IdealTriangle(sides, cusps)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class FundamentalQuadrilateral:
    """``Q = Δ ∪ ι0Δ`` with its side pairing by ``A`` and ``B``.

    Each side halfplane is ``{v · s ≥ 0}`` for an outward side normal s.
    """

    delta: IdealTriangle
    flipped: IdealTriangle
    vertices: Tuple[FloatArray, FloatArray, FloatArray, FloatArray]
    a_minus: Halfplane
    b_minus: Halfplane
    a_plus: Halfplane
    b_plus: Halfplane

    def side_endpoints(
        self, h: Halfplane, tol: float = 1e-7
    ) -> Tuple[FloatArray, FloatArray]:
        on_side = [v for v in self.vertices if abs(inner(v, h.s)) <= tol * scale_of(v)]
        if len(on_side) != 2:
            raise DomainError("Halfplane is not a side of the quadrilateral")
        return on_side[0], on_side[1]

    def pairing_residual(
        self, g: Isometry, source: Halfplane, target: Halfplane, samples: int = 16
    ) -> float:
        """How far ``g`` is from mapping the geodesic of ``source`` onto the
        geodesic of ``target``, measured on sample points.
        """
        m1, m2 = self.side_endpoints(source)
        weights = np.linspace(0.05, 0.95, samples)[:, None]
        points = weights * m1 + (1.0 - weights) * m2
        points /= np.sqrt(-inner_rows(points, points))[:, None]
        return float(np.max(np.abs(inner_rows(g(points), target.s))))


def fundamental_quadrilateral(
    ext: CoxeterExtension, n: FloatArray, eps: float = EPSILON
) -> FundamentalQuadrilateral:
    delta = fundamental_triangle(ext, n, eps)
    i0, _, i2 = ext.iotas
    flipped = IdealTriangle(
        tuple(i0(s) for s in delta.sides),  # type: ignore[arg-type]
        tuple(project_null(i0(c), eps) for c in delta.cusps),  # type: ignore[arg-type]
    )
    s0, s1, s2 = delta.sides
    vertices = tuple(project_null(v, eps) for v in (n, i2(n), i0(n), i0(i2(n))))
    return FundamentalQuadrilateral(
        delta,
        flipped,
        vertices,  # type: ignore[arg-type]
        a_minus=Halfplane(i0(s2)),
        b_minus=Halfplane(s1),
        a_plus=Halfplane(s2),
        b_plus=Halfplane(i0(s1)),
    )


def involution_words(length: int) -> Iterator[Tuple[int, ...]]:
    """Reduced words of exactly ``length`` letters in ``ι0, ι1, ι2``."""
    if length == 0:
        yield ()
        return
    for word in itertools.product(range(3), repeat=length):
        if all(a != b for a, b in zip(word, word[1:])):
            yield word
