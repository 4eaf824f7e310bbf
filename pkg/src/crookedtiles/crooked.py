"""
crookedtiles/crooked
~~~~~~~~~~~~~~~~~~~~

Crooked planes and halfspaces, parallel crooked slabs and crooked ideal
triangles.

For a halfspace with vertex p and null frame ``(s, s⁻, s⁺)`` write
``v = w − p``, ``a = v·s``, ``b⁺ = v·s⁺`` and ``b⁻ = v·s⁻``. The open
halfspace is the union of three sectors::

    b⁺ < 0 < b⁻
    a > 0, b⁺ < 0, b⁻ ≤ 0
    a < 0, b⁺ ≥ 0, b⁻ > 0

and its boundary, the crooked plane, is the stem ``{a = 0, b⁺b⁻ ≥ 0}``
together with the wings ``{b⁺ = 0, a ≥ 0}`` and ``{b⁻ = 0, a ≤ 0}``.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .feasibility import max_margin
from .hyperbolic import IdealTriangle
from .lorentz import (
    AffineIsometry,
    G,
    inner,
    inner_rows,
    NullFrame,
    null_frame,
    Point,
    VectorLike,
)
from .typing import Coefficients, FloatArray
from .utilities import (
    as_vector,
    DegenerateConfigurationError,
    DomainError,
    EPSILON,
    euclidean_unit,
    scale_of,
)

logger = logging.getLogger(__name__)


class Strictness(Enum):
    OPEN = "open"
    CLOSED = "closed"


# A linear constraint ``covector · w < rhs`` (strict) or ``≤ rhs``.
@dataclass(frozen=True, eq=False)
class _Constraint:
    covector: FloatArray
    rhs: float
    strict: bool


@dataclass(frozen=True, eq=False)
class CrookedHalfspace:
    """The crooked halfspace ``H(s, p)``.

    .. attribute:: frame

       Null frame of the director s.

    .. attribute:: vertex

       The vertex p.
    """

    frame: NullFrame
    vertex: Point

    @classmethod
    def create(cls, s: VectorLike, vertex: Point) -> "CrookedHalfspace":
        return cls(null_frame(s), vertex)

    def opposite(self) -> "CrookedHalfspace":
        """``H(−s, p)``, the complement of the closure of this halfspace."""
        return CrookedHalfspace(self.frame.opposite(), self.vertex)

    def translated(self, v: VectorLike) -> "CrookedHalfspace":
        return CrookedHalfspace(self.frame, self.vertex + v)

    def image(self, g: AffineIsometry) -> "CrookedHalfspace":
        """Image under an orientation and time preserving affine isometry."""
        return CrookedHalfspace.create(g.linear(self.frame.s), g(self.vertex))

    def coordinates(
        self, points: FloatArray
    ) -> Tuple[FloatArray, FloatArray, FloatArray]:
        """``(a, b⁺, b⁻)`` for an array of points of shape ``(..., 3)``."""
        v = np.asarray(points, dtype=float) - self.vertex.coordinates
        return (
            inner_rows(v, self.frame.s),
            inner_rows(v, self.frame.plus),
            inner_rows(v, self.frame.minus),
        )

    def contains_points(
        self,
        points: FloatArray,
        strictness: Strictness = Strictness.OPEN,
        eps: float = 0.0,
    ) -> FloatArray:
        """Vectorized membership; ``eps`` widens the closed halfspace and
        shrinks the open one.
        """
        if strictness is Strictness.CLOSED:
            return ~self.opposite().contains_points(points, Strictness.OPEN, eps)
        a, bp, bm = self.coordinates(points)
        return (
            ((bp < -eps) & (bm > eps))
            | ((a > eps) & (bp < -eps) & (bm <= eps))
            | ((a < -eps) & (bp >= -eps) & (bm > eps))
        )

    def sectors(self, strictness: Strictness) -> List[List[_Constraint]]:
        """The three convex sectors as linear constraints on w."""
        p = self.vertex.coordinates
        open_ = strictness is Strictness.OPEN

        def below(u: FloatArray, strict: bool) -> _Constraint:
            # (w - p)·u < 0
            return _Constraint(G @ u, inner(p, u), strict)

        def above(u: FloatArray, strict: bool) -> _Constraint:
            # (w - p)·u > 0
            return _Constraint(-(G @ u), -inner(p, u), strict)

        s, plus, minus = self.frame.s, self.frame.plus, self.frame.minus
        return [
            [below(plus, open_), above(minus, open_)],
            [above(s, open_), below(plus, open_), below(minus, False)],
            [below(s, open_), above(plus, False), above(minus, open_)],
        ]


def halfspace_contains(
    H: CrookedHalfspace,
    w: Point,
    strictness: Strictness = Strictness.OPEN,
) -> bool:
    return bool(H.contains_points(w.coordinates[None, :], strictness)[0])


def in_translational_semigroup(
    frame: NullFrame,
    v: VectorLike,
    strictness: Strictness = Strictness.OPEN,
    eps: float = EPSILON,
) -> bool:
    """Whether ``v = u⁻s⁻ − u⁺s⁺`` with ``u± > 0`` (open) or ``u± ≥ 0`` (closed)."""
    vector = as_vector(v)
    scale = max(1.0, float(np.linalg.norm(vector)))
    if abs(inner(vector, frame.s)) >= eps * scale:
        return False
    u_plus, u_minus = frame.semigroup_coefficients(vector)
    if strictness is Strictness.OPEN:
        return u_plus > eps * scale and u_minus > eps * scale
    return u_plus >= -eps * scale and u_minus >= -eps * scale


def _sector_pair_margin(
    first: Sequence[_Constraint], second: Sequence[_Constraint], all_strict: bool
) -> Optional[float]:
    constraints = list(first) + list(second)
    rows = np.array([c.covector for c in constraints])
    rhs = np.array([c.rhs for c in constraints])
    strict = [all_strict or c.strict for c in constraints]
    return max_margin(rows, rhs, strict)


def halfspaces_disjoint(
    H1: CrookedHalfspace,
    H2: CrookedHalfspace,
    strictness: Strictness = Strictness.OPEN,
    margin: float = EPSILON,
) -> bool:
    """Decide whether two halfspaces are disjoint, sector pair by sector pair.

    With OPEN the open halfspaces are compared: a pair of sectors meets when
    the strict inequalities can be satisfied with slack above ``margin``.
    With CLOSED the closed halfspaces are compared: a pair meets when the
    best slack is at least ``-margin``.
    """
    scale = scale_of(H1.vertex.coordinates, H2.vertex.coordinates)
    closed = strictness is Strictness.CLOSED
    sectors = itertools.product(H1.sectors(strictness), H2.sectors(strictness))
    for first, second in sectors:
        slack = _sector_pair_margin(first, second, all_strict=closed)
        if slack is None:
            continue
        if closed and slack >= -margin * scale:
            return False
        if not closed and slack > margin * scale:
            return False
    return True


def overlapping_pairs(
    halfspaces: Sequence[CrookedHalfspace],
    strictness: Strictness = Strictness.CLOSED,
    margin: float = EPSILON,
) -> List[Tuple[int, int]]:
    pairs = [
        (i, j)
        for i, j in itertools.combinations(range(len(halfspaces)), 2)
        if not halfspaces_disjoint(halfspaces[i], halfspaces[j], strictness, margin)
    ]
    total = len(halfspaces) * (len(halfspaces) - 1) // 2
    logger.debug("%d of %d halfspace pairs overlap", len(pairs), total)
    return pairs


@dataclass(frozen=True, eq=False)
class CrookedPlane:
    """The boundary of a crooked halfspace: stem, hinges and wings."""

    halfspace: CrookedHalfspace

    @property
    def frame(self) -> NullFrame:
        return self.halfspace.frame

    @property
    def vertex(self) -> Point:
        return self.halfspace.vertex

    def contains_points(self, points: FloatArray, eps: float = EPSILON) -> FloatArray:
        return self.halfspace.contains_points(
            points, Strictness.CLOSED, eps
        ) & self.halfspace.opposite().contains_points(points, Strictness.CLOSED, eps)


@dataclass(frozen=True, eq=False)
class HingeRay:
    """The ray ``origin + τ·direction`` for ``τ ≥ 0``; ``start`` is the
    parameter of its origin along the line it was computed on.
    """

    origin: Point
    direction: FloatArray
    start: float


def stem_hinge_ray(plane: CrookedPlane, base: Point, direction: VectorLike) -> HingeRay:
    """The part of the null line ``base + R·direction`` lying in the stem.

    The line must lie in the stem plane and be parallel to one of its hinges.
    """
    frame = plane.frame
    d = as_vector(direction)
    offset = base - plane.vertex
    scale = scale_of(offset, d)
    if max(abs(inner(offset, frame.s)), abs(inner(d, frame.s))) > 1e-7 * scale:
        raise DomainError("Line does not lie in the stem plane")

    # v = α s⁺ + β s⁻; the stem is αβ ≥ 0.
    pairing = inner(frame.plus, frame.minus)

    def alpha(v: FloatArray) -> float:
        return inner(v, frame.minus) / pairing

    def beta(v: FloatArray) -> float:
        return inner(v, frame.plus) / pairing

    if abs(beta(d)) <= 1e-9 * scale:
        fixed, moving, slope = beta(offset), alpha(offset), alpha(d)
    elif abs(alpha(d)) <= 1e-9 * scale:
        fixed, moving, slope = alpha(offset), beta(offset), beta(d)
    else:
        raise DomainError("Line is not parallel to a hinge")
    if abs(fixed) <= EPSILON * scale:
        raise DegenerateConfigurationError(
            "Line is a hinge; the whole line lies in the stem"
        )
    start = -moving / slope
    sign = float(np.sign(fixed) * np.sign(slope))
    return HingeRay(base + start * d, sign * d, start)


@dataclass(frozen=True, eq=False)
class ParallelCrookedSlab:
    """``closure(H(s, p1)) \\ H(s, p2)`` for ``p2 − p1`` in the closed
    translational semigroup of s.
    """

    frame: NullFrame
    p1: Point
    p2: Point

    def __post_init__(self) -> None:
        if not in_translational_semigroup(
            self.frame, self.p2 - self.p1, Strictness.CLOSED, 1e-7
        ):
            raise DomainError("p2 - p1 is not in the translational semigroup")

    def contains_points(self, points: FloatArray, eps: float = 0.0) -> FloatArray:
        outer = CrookedHalfspace(self.frame, self.p1)
        inner_halfspace = CrookedHalfspace(self.frame, self.p2)
        inside = outer.contains_points(points, Strictness.CLOSED, eps)
        return inside & ~inner_halfspace.contains_points(points, Strictness.OPEN, eps)


@dataclass(frozen=True, eq=False)
class CrookedIdealTriangle:
    """The complement of three crooked halfspaces ``H(sᵢ, pᵢ)`` whose
    directors are the sides of an ideal triangle.
    """

    triangle: IdealTriangle
    vertices: Tuple[Point, Point, Point]
    frames: Tuple[NullFrame, NullFrame, NullFrame] = field(init=False)

    def __post_init__(self) -> None:
        frames = tuple(null_frame(s) for s in self.triangle.sides)
        object.__setattr__(self, "frames", frames)

    @classmethod
    def from_coefficients(
        cls,
        triangle: IdealTriangle,
        center: Point,
        coefficients: Sequence[Coefficients],
    ) -> "CrookedIdealTriangle":
        """Vertices ``pᵢ = O + u⁻ᵢsᵢ⁻ − u⁺ᵢsᵢ⁺`` from pairs ``(u⁺ᵢ, u⁻ᵢ)``."""
        frames = [null_frame(s) for s in triangle.sides]
        vertices = tuple(
            center + frame.translation(u_plus, u_minus)
            for frame, (u_plus, u_minus) in zip(frames, coefficients)
        )
        return cls(triangle, vertices)  # type: ignore[arg-type]

    def halfspaces(self) -> Tuple[CrookedHalfspace, CrookedHalfspace, CrookedHalfspace]:
        return tuple(  # type: ignore[return-value]
            CrookedHalfspace(frame, p) for frame, p in zip(self.frames, self.vertices)
        )

    def faces(self) -> Tuple[CrookedPlane, CrookedPlane, CrookedPlane]:
        first, second, third = (CrookedPlane(h) for h in self.halfspaces())
        return first, second, third

    def contains_points(self, points: FloatArray) -> FloatArray:
        inside = np.ones(np.shape(points)[:-1], dtype=bool)
        for h in self.halfspaces():
            inside &= ~h.contains_points(points, Strictness.OPEN)
        return inside

    def interior_contains_points(self, points: FloatArray) -> FloatArray:
        inside = np.ones(np.shape(points)[:-1], dtype=bool)
        for h in self.halfspaces():
            inside &= ~h.contains_points(points, Strictness.CLOSED)
        return inside


def normalize_vertices(
    sides: Sequence[VectorLike], points: Sequence[Point], eps: float = EPSILON
) -> Tuple[Point, Tuple[FloatArray, FloatArray, FloatArray]]:
    """The center O with ``O·sᵢ = pᵢ·sᵢ`` and the offsets ``qᵢ = pᵢ − O``.

    The rows are sorted before solving so the center does not depend on the
    order of the input.
    """
    normals = np.array([G @ as_vector(s) for s in sides])
    rhs = np.array([normal @ p.coordinates for normal, p in zip(normals, points)])
    if abs(np.linalg.det(normals)) <= eps * scale_of(normals) ** 3:
        raise DegenerateConfigurationError("Side normals are linearly dependent")
    order = sorted(range(3), key=lambda i: (tuple(normals[i]), rhs[i]))
    center = Point(np.linalg.solve(normals[order], rhs[order]))
    offsets = tuple(p - center for p in points)
    return center, offsets  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class CITAnalysis:
    """Decomposition of a crooked ideal triangle into the minimal triangle at
    its center and three parallel slabs.

    .. attribute:: coefficients

       ``(u⁺ᵢ, u⁻ᵢ)`` for each side, from ``qᵢ = u⁻ᵢsᵢ⁻ − u⁺ᵢsᵢ⁺``.

    .. attribute:: slabs

       ``ParallelCrookedSlab(sᵢ; O, pᵢ)``; since ``pᵢ − O`` lies in the
       translational semigroup, the slab runs from the center to the vertex.
    """

    center: Point
    offsets: Tuple[FloatArray, FloatArray, FloatArray]
    coefficients: Tuple[Coefficients, Coefficients, Coefficients]
    minimal: CrookedIdealTriangle
    slabs: Tuple[Optional[ParallelCrookedSlab], ...]
    nondegenerate: bool

    def contains_points(self, points: FloatArray) -> FloatArray:
        """Membership in the union of the minimal triangle and the slabs."""
        inside = self.minimal.contains_points(points)
        for slab in self.slabs:
            if slab is not None:
                inside |= slab.contains_points(points)
        return inside


def analyze_cit(t: CrookedIdealTriangle, eps: float = EPSILON) -> CITAnalysis:
    center, offsets = normalize_vertices(t.triangle.sides, t.vertices, eps)
    first, second, third = (
        frame.semigroup_coefficients(q) for frame, q in zip(t.frames, offsets)
    )
    coefficients = (first, second, third)
    scale = scale_of(*offsets)
    nondegenerate = all(u > eps * scale for pair in coefficients for u in pair)
    minimal = CrookedIdealTriangle(t.triangle, (center, center, center))
    slabs = tuple(
        ParallelCrookedSlab(frame, center, p)
        if all(u >= -eps * scale for u in pair)
        else None
        for frame, p, pair in zip(t.frames, t.vertices, coefficients)
    )
    return CITAnalysis(center, offsets, coefficients, minimal, slabs, nondegenerate)


def cit_disjointness_check(t: CrookedIdealTriangle, margin: float = EPSILON) -> bool:
    """Whether the three closed halfspaces, and hence the faces, are pairwise
    disjoint.
    """
    return not overlapping_pairs(t.halfspaces(), Strictness.CLOSED, margin)


@dataclass
class TriangleMesh:
    """A labeled triangle mesh.

    .. attribute:: labels

       One label per face, such as ``"stem"`` or ``"wing+"``.
    """

    vertices: List[FloatArray] = field(default_factory=list)
    faces: List[Tuple[int, int, int]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    def add_vertex(self, point: FloatArray) -> int:
        self.vertices.append(np.asarray(point, dtype=float))
        return len(self.vertices) - 1

    def extend(self, other: "TriangleMesh", prefix: str = "") -> None:
        shift = len(self.vertices)
        self.vertices.extend(other.vertices)
        self.faces.extend((a + shift, b + shift, c + shift) for a, b, c in other.faces)
        self.labels.extend(prefix + label for label in other.labels)

    def vertex_labels(self) -> Dict[int, List[str]]:
        found: Dict[int, List[str]] = {}
        for face, label in zip(self.faces, self.labels):
            for index in face:
                found.setdefault(index, [])
                if label not in found[index]:
                    found[index].append(label)
        return found

    def to_obj(self) -> str:
        lines = ["# crookedtiles mesh"]
        lines.extend("v {:.12g} {:.12g} {:.12g}".format(*v) for v in self.vertices)
        current = None
        for (a, b, c), label in zip(self.faces, self.labels):
            if label != current:
                lines.append(f"o {label}")
                current = label
            lines.append(f"f {a + 1} {b + 1} {c + 1}")
        return "\n".join(lines) + "\n"


def _fan(
    mesh: TriangleMesh,
    center: int,
    radius: float,
    start: Tuple[int, FloatArray],
    end: Tuple[int, FloatArray],
    through: FloatArray,
    segments: int,
    label: str,
) -> None:
    # Circular sector of the clip disc from ``start`` to ``end`` passing ``through``.
    origin = mesh.vertices[center]
    e1 = start[1]
    e2 = euclidean_unit(through - (through @ e1) * e1)
    angle = float(np.arctan2(end[1] @ e2, end[1] @ e1))
    if angle <= 0.0:
        angle += 2.0 * np.pi
    previous = start[0]
    for k in range(1, segments + 1):
        if k == segments:
            current = end[0]
        else:
            phi = angle * k / segments
            arc = np.cos(phi) * e1 + np.sin(phi) * e2
            current = mesh.add_vertex(origin + radius * arc)
        mesh.faces.append((center, previous, current))
        mesh.labels.append(label)
        previous = current


def mesh_crooked_plane(
    cp: CrookedPlane, clip_radius: float, segments: int = 12
) -> TriangleMesh:
    """Triangulate the stem and wings of a crooked plane inside the ball of
    radius ``clip_radius`` around its vertex. Hinge edges are shared between
    the stem and wing parts.
    """
    if clip_radius <= 0:
        raise DomainError(f"Clip radius must be positive, got {clip_radius}")
    frame = cp.frame
    plus, minus, s = (euclidean_unit(v) for v in (frame.plus, frame.minus, frame.s))
    mesh = TriangleMesh()
    origin = cp.vertex.coordinates
    center = mesh.add_vertex(origin)
    directions = {"+plus": plus, "-plus": -plus, "+minus": minus, "-minus": -minus}
    rays = {
        name: (mesh.add_vertex(origin + clip_radius * direction), direction)
        for name, direction in directions.items()
    }
    fans = (
        ("+plus", "+minus", plus + minus, segments, "stem"),
        ("-plus", "-minus", -plus - minus, segments, "stem"),
        ("+plus", "-plus", s, 2 * segments, "wing+"),
        ("+minus", "-minus", -s, 2 * segments, "wing-"),
    )
    for start, end, middle, count, label in fans:
        _fan(mesh, center, clip_radius, rays[start], rays[end], middle, count, label)
    return mesh
