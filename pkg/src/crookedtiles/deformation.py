"""
crookedtiles/deformation
~~~~~~~~~~~~~~~~~~~~~~~~

Affine deformations of a surface group: cocycles and Margulis invariants,
affine Coxeter extensions bounded by crooked ideal triangles, the corner
matrices relating vertex coefficients to Margulis invariants, and the
quadrilaterals that appear on the edges of a tile.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .crooked import (
    CrookedHalfspace,
    CrookedIdealTriangle,
    CrookedPlane,
    HingeRay,
    overlapping_pairs,
    stem_hinge_ray,
    Strictness,
)
from .farey import BasicTriple, F2Word
from .hyperbolic import classify_isometry, IdealTriangle, IsometryClass, neutral_vector
from .lorentz import (
    AffineIsometry,
    inner,
    Isometry,
    null_frame,
    ORIGIN,
    particle_involution,
    Point,
)
from .surface import (
    CoxeterExtension,
    fundamental_triangle,
    FuchsianRep,
    involution_words,
)
from .typing import AlphaTriple, Coefficients, FloatArray
from .utilities import (
    as_vector,
    DegenerateConfigurationError,
    DomainError,
    EPSILON,
)

logger = logging.getLogger(__name__)

# Coefficient of the vertex offset qᵢ in ½α of (A, B, C): ½α_A = (q2 − q0)·A⁰,
# ½α_B = (q0 − q1)·B⁰ and ½α_C = (q1 − q2)·C⁰.
_VERTEX_COEFFICIENTS = {0: (-1.0, 1.0, 0.0), 1: (0.0, -1.0, 1.0), 2: (1.0, 0.0, -1.0)}


@dataclass(frozen=True, eq=False)
class Cocycle:
    """An affine deformation of a two-generator linear group, recorded by the
    translational parts of the generators at the origin.
    """

    generators: Tuple[Isometry, Isometry]
    ua: FloatArray
    ub: FloatArray

    @classmethod
    def from_rep(
        cls, rep: FuchsianRep, ua: Sequence[float], ub: Sequence[float]
    ) -> "Cocycle":
        return cls((rep.A, rep.B), as_vector(ua), as_vector(ub))

    @classmethod
    def from_values(
        cls, generators: Tuple[Isometry, Isometry], values: Sequence[float]
    ) -> "Cocycle":
        values = np.asarray(values, dtype=float)
        if values.shape != (6,):
            raise DomainError(f"A cocycle has six values, got shape {values.shape}")
        return cls(generators, values[:3].copy(), values[3:].copy())

    @classmethod
    def coboundary(
        cls, generators: Tuple[Isometry, Isometry], v: Sequence[float]
    ) -> "Cocycle":
        """The deformation obtained by conjugating with the translation by v."""
        vector = as_vector(v)
        A, B = generators
        return cls(generators, vector - A(vector), vector - B(vector))

    @property
    def values(self) -> FloatArray:
        return np.concatenate([self.ua, self.ub])

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.generators, self.ua + other.ua, self.ub + other.ub)

    def scaled(self, factor: float) -> "Cocycle":
        return Cocycle(self.generators, factor * self.ua, factor * self.ub)


def basis_cocycles(generators: Tuple[Isometry, Isometry]) -> List[Cocycle]:
    return [Cocycle.from_values(generators, row) for row in np.eye(6)]


def evaluate_cocycle(u: Cocycle, w: F2Word) -> AffineIsometry:
    A, B = (AffineIsometry(g, t) for g, t in zip(u.generators, (u.ua, u.ub)))
    letters = {"a": A, "A": A.inverse(), "b": B, "B": B.inverse()}
    result = AffineIsometry.identity()
    for letter in w.letters:
        result = result @ letters[letter]
    return result


def margulis_invariant(g: AffineIsometry, tol: float = EPSILON) -> float:
    """``α(g) = g⁰ · (g(x) − x)``, independent of x.

    For a parabolic linear part the value depends on the scale of the null
    fixed vector; see :func:`crookedtiles.hyperbolic.is_scale_ambiguous`.
    """
    kind = classify_isometry(g.linear, tol)
    if kind in (IsometryClass.IDENTITY, IsometryClass.ELLIPTIC):
        raise DomainError(
            f"Margulis invariant is undefined for {kind.value} linear part"
        )
    return inner(neutral_vector(g.linear, tol), g.translation)


def alpha_coordinates(u: Cocycle, t: BasicTriple) -> AlphaTriple:
    first, second, third = (margulis_invariant(evaluate_cocycle(u, w)) for w in t)
    return first, second, third


def alpha_matrix(generators: Tuple[Isometry, Isometry], t: BasicTriple) -> FloatArray:
    """The linear map from cocycle values to the Margulis invariants of ``t``."""
    return np.array([alpha_coordinates(e, t) for e in basis_cocycles(generators)]).T


def cocycle_from_alpha(
    target: Sequence[float], t: BasicTriple, generators: Tuple[Isometry, Isometry]
) -> Cocycle:
    """The minimal norm cocycle with Margulis invariants ``target`` on ``t``."""
    matrix = alpha_matrix(generators, t)
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values[-1] <= 1e-9 * singular_values[0]:
        raise DegenerateConfigurationError(f"Margulis invariants of {t} are dependent")
    values = np.linalg.pinv(matrix) @ np.asarray(target, dtype=float)
    return Cocycle.from_values(generators, values)


def alpha_via_lemma(
    offsets: Sequence[FloatArray], neutral_vectors: Sequence[FloatArray]
) -> AlphaTriple:
    """Margulis invariants of ``(A, B, C)`` from the vertex offsets of a
    crooked ideal triangle and the neutral vectors of the triple.
    """
    q0, q1, q2 = offsets
    a0, b0, c0 = neutral_vectors
    return (
        2.0 * inner(q2 - q0, a0),
        2.0 * inner(q0 - q1, b0),
        2.0 * inner(q1 - q2, c0),
    )


class AffineFundamentalDomain:
    """A region of E bounded by crooked planes together with the affine
    group it is meant to tile.
    """

    def contains_points(self, points: FloatArray) -> FloatArray:
        raise NotImplementedError()

    def interior_contains_points(self, points: FloatArray) -> FloatArray:
        raise NotImplementedError()

    def group_elements(self, max_length: int) -> List[AffineIsometry]:
        """Nontrivial elements given by reduced words of length at most
        ``max_length``.
        """
        raise NotImplementedError()

    def sampling_box(self) -> Tuple[FloatArray, FloatArray]:
        raise NotImplementedError()

    def halfspaces(self) -> Sequence[CrookedHalfspace]:
        raise NotImplementedError()

    def reflected(self) -> "AffineFundamentalDomain":
        return PointReflection(self)


def _box_around(
    center: Point, offsets: Sequence[FloatArray]
) -> Tuple[FloatArray, FloatArray]:
    radius = 3.0 * max([1.0] + [float(np.max(np.abs(q))) for q in offsets])
    return center.coordinates - radius, center.coordinates + radius


@dataclass(frozen=True, eq=False)
class AffineCoxeter(AffineFundamentalDomain):
    """Three particle involutions ``ι̃ᵢ`` fixing ``pᵢ + R tᵢ`` and the crooked
    ideal triangle with vertices ``pᵢ``.

    ``ρ(A) = ι̃2ι̃0``, ``ρ(B) = ι̃0ι̃1`` and ``ρ(C) = ι̃1ι̃2`` define an affine
    deformation of the underlying triple.

    Sign convention: the null vectors of each side are labeled by
    :func:`crookedtiles.lorentz.null_frame`, and with that labeling positive
    vertex coefficients on the extension of ``(a, b, BA)`` give negative
    Margulis invariants. ``Tile.chirality`` records the sign for every
    superbasis; the opposite sign is realized by the
    :class:`PointReflection` of the domain.
    """

    extension: CoxeterExtension
    cit: CrookedIdealTriangle
    involutions: Tuple[AffineIsometry, AffineIsometry, AffineIsometry]
    coefficients: Tuple[Coefficients, Coefficients, Coefficients]
    center: Point

    @property
    def triangle(self) -> IdealTriangle:
        return self.cit.triangle

    @property
    def offsets(self) -> Tuple[FloatArray, FloatArray, FloatArray]:
        first, second, third = (p - self.center for p in self.cit.vertices)
        return first, second, third

    def boosts(self) -> Tuple[AffineIsometry, AffineIsometry, AffineIsometry]:
        i0, i1, i2 = self.involutions
        return i2 @ i0, i0 @ i1, i1 @ i2

    def cocycle(self) -> Cocycle:
        A, B, _ = self.boosts()
        return Cocycle((A.linear, B.linear), A.translation, B.translation)

    def alpha(self) -> AlphaTriple:
        return alpha_via_lemma(self.offsets, self.extension.neutral_vectors())

    def evaluate(self, word: Sequence[int]) -> AffineIsometry:
        result = AffineIsometry.identity()
        for index in word:
            result = result @ self.involutions[index]
        return result

    def contains_points(self, points: FloatArray) -> FloatArray:
        return self.cit.contains_points(points)

    def interior_contains_points(self, points: FloatArray) -> FloatArray:
        return self.cit.interior_contains_points(points)

    def group_elements(self, max_length: int) -> List[AffineIsometry]:
        return [
            self.evaluate(word)
            for length in range(1, max_length + 1)
            for word in involution_words(length)
        ]

    def sampling_box(self) -> Tuple[FloatArray, FloatArray]:
        return _box_around(self.center, self.offsets)

    def halfspaces(self) -> Sequence[CrookedHalfspace]:
        return self.cit.halfspaces()


def affine_coxeter(
    ext: CoxeterExtension,
    n: FloatArray,
    coefficients: Sequence[Coefficients],
    center: Point = ORIGIN,
) -> AffineCoxeter:
    """Vertices ``pᵢ = center + u⁻ᵢsᵢ⁻ − u⁺ᵢsᵢ⁺`` on the sides of the
    fundamental triangle with cusp n, from pairs ``(u⁺ᵢ, u⁻ᵢ)``.
    """
    if len(coefficients) != 3:
        raise DomainError(f"Expected three coefficient pairs, got {len(coefficients)}")
    pairs = tuple((float(u_plus), float(u_minus)) for u_plus, u_minus in coefficients)
    triangle = fundamental_triangle(ext, n)
    cit = CrookedIdealTriangle.from_coefficients(triangle, center, pairs)
    i0, i1, i2 = (particle_involution(p, t) for p, t in zip(cit.vertices, ext.fixed))
    involutions = (i0, i1, i2)
    return AffineCoxeter(ext, cit, involutions, pairs, center)  # type: ignore[arg-type]


def corner_matrices(
    ext: CoxeterExtension, n: FloatArray, eps: float = EPSILON
) -> Tuple[FloatArray, FloatArray, FloatArray]:
    """The 3×2 matrices ``Mᵢ`` with ``½α(A, B, C) = Σ Mᵢ (u⁺ᵢ, u⁻ᵢ)``, indexed
    by face.

    Each has rank one and ``Mᵢ`` has a zero row: A for face 1, B for face 2
    and C for face 0.
    """
    triangle = fundamental_triangle(ext, n, eps)
    neutral = ext.neutral_vectors()
    matrices = []
    for face, side in enumerate(triangle.sides):
        frame = null_frame(side)
        rows = [
            weight * np.array([-inner(frame.plus, normal), inner(frame.minus, normal)])
            for weight, normal in zip(_VERTEX_COEFFICIENTS[face], neutral)
        ]
        matrices.append(np.array(rows))
    return tuple(matrices)  # type: ignore[return-value]


_LETTERS = "aAbB"
_INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}


def reduced_words(length: int) -> Iterator[F2Word]:
    """Freely reduced words of exactly ``length`` letters in ``a, b``."""
    for letters in itertools.product(_LETTERS, repeat=length):
        if all(_INVERSE_LETTER[x] != y for x, y in zip(letters, letters[1:])):
            yield F2Word("".join(letters))


@dataclass(frozen=True, eq=False)
class EdgeQuadrilateral(AffineFundamentalDomain):
    """The crooked quadrilateral for a deformation on an edge of a tile,
    where the vertex coefficient of face 0 vanishes.

    .. attribute:: halfspaces

       ``H(s1, p1)``, ``H(s2, p2)`` and their images under ``ι̃0``.

    .. attribute:: hinge_rays

       Where the stem of face 2 meets the hinge line through the center in
       direction n, and where the stem of face 1 meets the line in direction
       ``ι0n``. None when a vertex sits on the center.
    """

    extension: CoxeterExtension
    triangle: IdealTriangle
    center: Point
    coefficients: Tuple[Coefficients, Coefficients]
    involutions: Tuple[AffineIsometry, AffineIsometry, AffineIsometry]
    faces: Tuple[CrookedHalfspace, CrookedHalfspace, CrookedHalfspace, CrookedHalfspace]
    overlapping: List[Tuple[int, int]]
    hinge_rays: Tuple[Optional[HingeRay], Optional[HingeRay]]

    @property
    def disjoint(self) -> bool:
        return not self.overlapping

    def generators(self) -> Tuple[AffineIsometry, AffineIsometry]:
        i0, i1, i2 = self.involutions
        return i2 @ i0, i0 @ i1

    def evaluate(self, w: F2Word) -> AffineIsometry:
        A, B = self.generators()
        letters = {"a": A, "A": A.inverse(), "b": B, "B": B.inverse()}
        result = AffineIsometry.identity()
        for letter in w.letters:
            result = result @ letters[letter]
        return result

    def contains_points(self, points: FloatArray) -> FloatArray:
        inside = np.ones(np.shape(points)[:-1], dtype=bool)
        for h in self.faces:
            inside &= ~h.contains_points(points, Strictness.OPEN)
        return inside

    def interior_contains_points(self, points: FloatArray) -> FloatArray:
        inside = np.ones(np.shape(points)[:-1], dtype=bool)
        for h in self.faces:
            inside &= ~h.contains_points(points, Strictness.CLOSED)
        return inside

    def group_elements(self, max_length: int) -> List[AffineIsometry]:
        return [
            self.evaluate(w)
            for length in range(1, max_length + 1)
            for w in reduced_words(length)
        ]

    def sampling_box(self) -> Tuple[FloatArray, FloatArray]:
        return _box_around(self.center, [h.vertex - self.center for h in self.faces])

    def halfspaces(self) -> Sequence[CrookedHalfspace]:
        return self.faces


def _hinge_ray(
    face: CrookedHalfspace, base: Point, direction: FloatArray
) -> Optional[HingeRay]:
    try:
        return stem_hinge_ray(CrookedPlane(face), base, direction)
    except DegenerateConfigurationError:
        return None


def edge_quadrilateral(
    ext: CoxeterExtension,
    n: FloatArray,
    u1: Coefficients,
    u2: Coefficients,
    center: Point = ORIGIN,
    allow_degenerate: bool = False,
) -> EdgeQuadrilateral:
    """Faces ``H(s1, p1)`` and ``H(s2, p2)`` of the crooked ideal triangle with
    ``p0`` at the center, together with their images under ``ι̃0``.

    The coefficients must be positive unless ``allow_degenerate`` is set, in
    which case the result records which faces overlap.
    """
    pairs = ((float(u1[0]), float(u1[1])), (float(u2[0]), float(u2[1])))
    if not allow_degenerate and min(min(pair) for pair in pairs) <= 0.0:
        raise DomainError(f"Edge coefficients must be positive, got {pairs}")
    triangle = fundamental_triangle(ext, n)
    cit = CrookedIdealTriangle.from_coefficients(
        triangle, center, ((0.0, 0.0),) + pairs
    )
    i0, i1, i2 = (particle_involution(p, t) for p, t in zip(cit.vertices, ext.fixed))
    involutions = (i0, i1, i2)
    _, h1, h2 = cit.halfspaces()
    faces = (h1, h2, h1.image(i0), h2.image(i0))
    overlapping = overlapping_pairs(faces, Strictness.CLOSED)
    cusp, flipped_cusp = triangle.cusps[0], triangle.cusps[1]
    rays = (_hinge_ray(h2, center, cusp), _hinge_ray(h1, center, flipped_cusp))
    if overlapping:
        logger.info("Edge quadrilateral faces overlap: %s", overlapping)
    return EdgeQuadrilateral(
        ext, triangle, center, pairs, involutions, faces, overlapping, rays
    )


@dataclass(frozen=True, eq=False)
class PointReflection(AffineFundamentalDomain):
    """The image of a domain under ``x ↦ −x``, with its group conjugated.

    Conjugation negates translational parts and hence Margulis invariants.
    """

    domain: AffineFundamentalDomain

    def contains_points(self, points: FloatArray) -> FloatArray:
        return self.domain.contains_points(-points)

    def interior_contains_points(self, points: FloatArray) -> FloatArray:
        return self.domain.interior_contains_points(-points)

    def group_elements(self, max_length: int) -> List[AffineIsometry]:
        return [
            AffineIsometry(g.linear, -g.translation)
            for g in self.domain.group_elements(max_length)
        ]

    def sampling_box(self) -> Tuple[FloatArray, FloatArray]:
        low, high = self.domain.sampling_box()
        return -high, -low

    def halfspaces(self) -> Sequence[CrookedHalfspace]:
        raise DomainError("A reflected domain is not bounded by crooked halfspaces")

    def reflected(self) -> AffineFundamentalDomain:
        return self.domain
