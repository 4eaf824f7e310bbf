"""
crookedtiles/tiling
~~~~~~~~~~~~~~~~~~~

Tiles of the deformation space.

Every superbasis in the tree gives a triangular cone of Margulis invariant
triples, spanned by the deformations in which a single vertex of the crooked
ideal triangle moves. All cones are expressed in the Margulis invariant
coordinates of the base triple ``(a, b, BA)``.

Node coordinates are converted to base coordinates by propagating the
linear identity between the invariants of a flip along the tree, so no word
longer than a superbasis is ever multiplied out in SO(2,1).
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .deformation import (
    affine_coxeter,
    AffineFundamentalDomain,
    alpha_matrix,
    basis_cocycles,
    corner_matrices,
    edge_quadrilateral,
    evaluate_cocycle,
    margulis_invariant,
)
from .crooked import cit_disjointness_check
from .farey import (
    BASE_TRIPLE,
    BasicTriple,
    enumerate_tree,
    F2Word,
    FareyFraction,
    TreeNode,
    word_fraction,
)
from .feasibility import max_margin
from .lorentz import ORIGIN, Point
from .surface import (
    CoxeterExtension,
    FixedPointChoice,
    fixed_point_cycle,
    FuchsianRep,
)
from .typing import AlphaTriple, Coefficients, FloatArray
from .utilities import (
    DegenerateConfigurationError,
    DomainError,
    EPSILON,
    euclidean_unit,
    NotTameError,
    TILE_EPSILON,
)

logger = logging.getLogger(__name__)

_CHART_AXES = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])


class TileRegion(Enum):
    INTERIOR = "interior"
    EDGE = "edge"
    CORNER = "corner"
    OUTSIDE = "outside"


def flip_coefficients(
    trace_a: float, trace_b: float, trace_c: float, trace_flipped: float
) -> Tuple[float, float, float]:
    """``(a, b, c)`` with ``α(C') = a α(A) + b α(B) − c α(C)`` for the flip
    ``C' = A⁻¹B`` of ``(A, B, C)``, from the traces of the 2×2 words.
    """
    traces = (trace_a, trace_b, trace_c, trace_flipped)
    if min(traces) <= 2.0:
        raise DomainError(
            f"Flip traces {traces} are not all hyperbolic with positive sign"
        )
    half_cosh = [0.5 * tr for tr in traces]
    half_sinh = [np.sqrt(ch * ch - 1.0) for ch in half_cosh]
    return (
        2.0 * half_sinh[0] * half_cosh[1] / half_sinh[3],
        2.0 * half_cosh[0] * half_sinh[1] / half_sinh[3],
        half_sinh[2] / half_sinh[3],
    )


def _flip_slots(slot: int) -> Tuple[int, int, int]:
    # The flip of ``slot`` replaces C = W[slot] by A⁻¹B for A, B the words
    # in the following slots.
    return (slot + 1) % 3, (slot + 2) % 3, slot


def _matching_slot(parent: TreeNode, fraction: FareyFraction) -> int:
    for slot, x in enumerate(parent.label):
        if x == fraction:
            return slot
    raise DomainError(f"{fraction} is not in {parent.label}")


@dataclass(frozen=True)
class FlipIdentity:
    slot: int
    coefficients: Tuple[float, float, float]
    residual: float


def flip_covector_identity(
    rep: FuchsianRep, parent: TreeNode, child: TreeNode
) -> FlipIdentity:
    """Check the flip identity for the Margulis invariants of an edge of the
    tree on the basis cocycles of ``rep``.
    """
    if child.parent != parent.index or child.slot is None:
        raise DomainError(f"Node {child.index} is not a child of node {parent.index}")
    a_slot, b_slot, c_slot = _flip_slots(child.slot)
    words = (
        parent.triple[a_slot],
        parent.triple[b_slot],
        parent.triple[c_slot],
        child.triple[child.slot],
    )
    traces = [float(np.trace(rep.evaluate_sl2(w))) for w in words]
    a, b, c = flip_coefficients(*traces)
    residual = 0.0
    for u in basis_cocycles((rep.A, rep.B)):
        alpha_a, alpha_b, alpha_c, alpha_flipped = (
            margulis_invariant(evaluate_cocycle(u, w)) for w in words
        )
        predicted = a * alpha_a + b * alpha_b - c * alpha_c
        residual = max(residual, abs(alpha_flipped - predicted))
    return FlipIdentity(child.slot, (a, b, c), residual)


@dataclass(frozen=True, eq=False)
class NodeCoordinates:
    """Traces and Margulis invariant covectors of the words of a node.

    .. attribute:: covectors

       Row k is the covector of the slot-k word in base coordinates, so the
       node coordinates of a deformation are ``covectors @ base``.
    """

    traces: Tuple[float, float, float]
    covectors: FloatArray


def base_coordinates(rep: FuchsianRep) -> NodeCoordinates:
    traces = tuple(float(np.trace(rep.evaluate_sl2(w))) for w in BASE_TRIPLE)
    return NodeCoordinates(traces, np.eye(3))  # type: ignore[arg-type]


def child_coordinates(
    parent: TreeNode, state: NodeCoordinates, child: TreeNode
) -> NodeCoordinates:
    if child.slot is None:
        raise DomainError("The root has no parent")
    a_slot, b_slot, c_slot = _flip_slots(child.slot)
    traces = list(state.traces)
    flipped_trace = traces[a_slot] * traces[b_slot] - traces[c_slot]
    a, b, c = flip_coefficients(
        traces[a_slot], traces[b_slot], traces[c_slot], flipped_trace
    )
    rows = state.covectors
    child_traces = [0.0, 0.0, 0.0]
    child_rows = np.zeros((3, 3))
    for slot in range(3):
        if slot == child.slot:
            child_traces[slot] = flipped_trace
            child_rows[slot] = a * rows[a_slot] + b * rows[b_slot] - c * rows[c_slot]
        else:
            match = _matching_slot(parent, child.label[slot])
            child_traces[slot] = traces[match]
            child_rows[slot] = rows[match]
    return NodeCoordinates(tuple(child_traces), child_rows)  # type: ignore[arg-type]


def direct_coordinates(rep: FuchsianRep, triple: BasicTriple) -> NodeCoordinates:
    """The same covectors computed from cocycles; only usable for short words."""
    generators = (rep.A, rep.B)
    base = alpha_matrix(generators, BASE_TRIPLE)
    covectors = alpha_matrix(generators, triple) @ np.linalg.pinv(base)
    traces = tuple(float(np.trace(rep.evaluate_sl2(w))) for w in triple)
    return NodeCoordinates(traces, covectors)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class Tile:
    """The cone of Margulis invariants realized by crooked ideal triangles
    for one superbasis.

    .. attribute:: corners

       Unit rows in base coordinates; corner k is the ray on which the
       invariant of the slot-k word vanishes.

    .. attribute:: index_map

       ``index_map[k]`` is the face whose corner matrix spans corner k.

    .. attribute:: chirality

       Sign relating the cone to the invariants of the crooked ideal
       triangles: these have invariants ``chirality`` times the cone.
    """

    node: TreeNode
    extension: CoxeterExtension
    n: FloatArray
    matrices: Tuple[FloatArray, FloatArray, FloatArray]
    coordinates: NodeCoordinates
    corners: FloatArray
    index_map: Tuple[int, int, int]
    chirality: int
    face_scales: Tuple[float, float, float]

    @property
    def index(self) -> int:
        return self.node.index

    def corner_key(self, slot: int) -> FareyFraction:
        return self.node.label[slot]

    def edge(self, slot: int) -> Tuple[int, int]:
        """Corners of the edge opposite corner ``slot``."""
        return (slot + 1) % 3, (slot + 2) % 3

    def to_base(self, alpha: Sequence[float]) -> FloatArray:
        return np.linalg.solve(
            self.coordinates.covectors, np.asarray(alpha, dtype=float)
        )


def tile(
    rep: FuchsianRep,
    node: TreeNode,
    coordinates: Optional[NodeCoordinates] = None,
    choice: FixedPointChoice = FixedPointChoice.PLUS,
    eps: float = TILE_EPSILON,
    tol: float = EPSILON,
) -> Tile:
    """The tile of a node.

    ``eps`` bounds the corner rows read as zero, ``tol`` is passed to the
    fixed point and triangle constructions.
    """
    if coordinates is None:
        coordinates = direct_coordinates(rep, node.triple)
    ext = CoxeterExtension.for_triple(rep, node.triple)
    n = fixed_point_cycle(ext, choice, tol).n
    matrices = corner_matrices(ext, n, tol)
    spans = [m @ np.ones(2) for m in matrices]
    total = float(np.sum(spans))
    if total == 0.0:
        raise DegenerateConfigurationError(
            f"Corner matrices of {node.label} sum to zero"
        )
    chirality = 1 if total > 0 else -1

    faces = [-1, -1, -1]
    for face, span in enumerate(spans):
        oriented = chirality * span
        size = float(np.max(np.abs(oriented)))
        zero_rows = [r for r in range(3) if abs(oriented[r]) <= eps * size]
        if len(zero_rows) != 1 or np.min(oriented) < -eps * size:
            raise DegenerateConfigurationError(
                f"Corner of face {face} of {node.label} "
                "is not on a face of the positive octant"
            )
        faces[zero_rows[0]] = face
    if sorted(faces) != [0, 1, 2]:
        raise DegenerateConfigurationError(
            f"Corners of {node.label} do not match its words"
        )

    corners = []
    scales = [0.0, 0.0, 0.0]
    for slot, face in enumerate(faces):
        in_base = np.linalg.solve(coordinates.covectors, chirality * spans[face])
        scales[face] = float(np.linalg.norm(in_base))
        corners.append(in_base / scales[face])
    return Tile(
        node,
        ext,
        n,
        matrices,
        coordinates,
        np.array(corners),
        tuple(faces),  # type: ignore[arg-type]
        chirality,
        tuple(scales),  # type: ignore[arg-type]
    )


def _unit_direction(direction: Sequence[float]) -> FloatArray:
    d = np.asarray(direction, dtype=float)
    if d.shape != (3,) or not np.any(d):
        raise DomainError(
            f"Expected a nonzero direction with three components, got {direction}"
        )
    return euclidean_unit(d)


def barycentric(t: Tile, direction: Sequence[float]) -> FloatArray:
    """Coefficients of a unit direction on the corners of a tile."""
    d = _unit_direction(direction)
    if abs(np.linalg.det(t.corners)) <= 1e-12:
        raise DegenerateConfigurationError(f"Corners of tile {t.index} are dependent")
    return np.linalg.solve(t.corners.T, d)


def tile_contains(
    t: Tile, direction: Sequence[float], eps: float = TILE_EPSILON
) -> TileRegion:
    weights = barycentric(t, direction)
    if np.min(weights) < -eps:
        return TileRegion.OUTSIDE
    zeros = int(np.sum(np.abs(weights) <= eps))
    if zeros == 0:
        return TileRegion.INTERIOR
    if zeros == 1:
        return TileRegion.EDGE
    if zeros == 2:
        return TileRegion.CORNER
    return TileRegion.OUTSIDE


def chart_point(direction: Sequence[float]) -> FloatArray:
    """Barycentric chart of the positive octant: e1, e2 and e3 go to the
    corners of an equilateral triangle.
    """
    d = np.asarray(direction, dtype=float)
    total = float(np.sum(d))
    if total <= 0.0:
        raise DegenerateConfigurationError(
            f"{d} is not in the positive dual cone of the base triple"
        )
    return (d / total) @ _CHART_AXES


@dataclass(frozen=True, eq=False)
class TilingAtlas:
    """All tiles within ``depth`` of the base superbasis.

    .. attribute:: corners

       Corner rays keyed by the fraction of the word vanishing on them.

    .. attribute:: boundary

       Corner keys around the boundary of the union, in cyclic order.
    """

    rep: FuchsianRep
    depth: int
    nodes: List[TreeNode]
    tiles: List[Tile]
    corners: Dict[FareyFraction, FloatArray]
    boundary: List[FareyFraction]

    @property
    def boundary_edges(self) -> int:
        return len(self.boundary)

    def tree_edges(self) -> List[Tuple[int, int]]:
        return [
            (node.parent, node.index) for node in self.nodes if node.parent is not None
        ]

    def chart_polygon(self) -> FloatArray:
        return np.array([chart_point(self.corners[key]) for key in self.boundary])

    def is_convex(self, tol: float = 1e-9) -> bool:
        polygon = self.chart_polygon()
        edges = np.roll(polygon, -1, axis=0) - polygon
        following = np.roll(edges, -1, axis=0)
        turns = edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]
        return bool(np.all(turns >= -tol) or np.all(turns <= tol))

    def locate(self, direction: Sequence[float]) -> Optional[Tuple[Tile, TileRegion]]:
        """The tile containing a direction, preferring one with the direction
        in its interior.
        """
        found: Optional[Tuple[Tile, TileRegion]] = None
        for t in self.tiles:
            region = tile_contains(t, direction)
            if region is TileRegion.INTERIOR:
                return t, region
            if region is not TileRegion.OUTSIDE and found is None:
                found = t, region
        return found


def primitive_covector(atlas: TilingAtlas, w: F2Word) -> FloatArray:
    """The Margulis invariant of a primitive word as a covector on base
    coordinates.
    """
    fraction = word_fraction(w)
    for t in atlas.tiles:
        for slot, x in enumerate(t.node.label):
            if x == fraction:
                return t.coordinates.covectors[slot]
    raise DomainError(f"No superbasis within depth {atlas.depth} contains {w}")


def _boundary_cycle(
    tiles: Sequence[Tile], nodes: Sequence[TreeNode]
) -> List[FareyFraction]:
    used = set()
    for node in nodes:
        if node.parent is not None:
            used.add((node.index, node.slot))
            used.add((node.parent, node.slot))
    neighbors: Dict[FareyFraction, List[FareyFraction]] = {}
    for t in tiles:
        for slot in range(3):
            if (t.index, slot) in used:
                continue
            first, second = (t.corner_key(k) for k in t.edge(slot))
            neighbors.setdefault(first, []).append(second)
            neighbors.setdefault(second, []).append(first)
    if any(len(adjacent) != 2 for adjacent in neighbors.values()):
        raise DegenerateConfigurationError(
            "Boundary of the atlas is not a simple cycle"
        )
    start = next(iter(neighbors))
    cycle = [start]
    previous, current = start, neighbors[start][0]
    while current != start:
        cycle.append(current)
        a, b = neighbors[current]
        previous, current = current, b if a == previous else a
    if len(cycle) != len(neighbors):
        raise DegenerateConfigurationError("Boundary of the atlas is disconnected")
    return cycle


def enumerate_tiles(
    rep: FuchsianRep,
    depth: int,
    choice: FixedPointChoice = FixedPointChoice.PLUS,
    corner_tol: float = 1e-6,
    tol: float = EPSILON,
) -> TilingAtlas:
    nodes = enumerate_tree(depth)
    states: Dict[int, NodeCoordinates] = {}
    tiles: List[Tile] = []
    corners: Dict[FareyFraction, FloatArray] = {}
    for node in nodes:
        if node.parent is None:
            states[node.index] = base_coordinates(rep)
        else:
            parent = nodes[node.parent]
            states[node.index] = child_coordinates(parent, states[node.parent], node)
        t = tile(rep, node, states[node.index], choice, tol=tol)
        for slot in range(3):
            key = t.corner_key(slot)
            known = corners.setdefault(key, t.corners[slot])
            if np.max(np.abs(known - t.corners[slot])) > corner_tol:
                raise DegenerateConfigurationError(
                    f"Tiles disagree on the corner where {key} vanishes"
                )
        tiles.append(t)
    boundary = _boundary_cycle(tiles, nodes)
    for key in boundary:
        chart_point(corners[key])
    logger.info(
        "Atlas of depth %d: %d tiles, %d boundary edges",
        depth,
        len(tiles),
        len(boundary),
    )
    return TilingAtlas(rep, depth, nodes, tiles, corners, boundary)


@dataclass(frozen=True)
class DisjointnessReport:
    """Outcome of :func:`tiles_disjoint`.

    .. attribute:: shared_edge_residual

       Largest disagreement between the corners of neighboring tiles.
    """

    pairs_checked: int
    adjacent_pairs: int
    overlapping: List[Tuple[int, int]]
    shared_edge_residual: float

    @property
    def disjoint(self) -> bool:
        return not self.overlapping


def _cones_overlap(first: FloatArray, second: FloatArray, tol: float) -> bool:
    # Interiors meet iff Σλc = Σμd for some λ, μ > 0; maximize min(λ, μ).
    rows = -np.eye(6)
    normalization = [[1.0, 1.0, 1.0, 0.0, 0.0, 0.0]]
    equalities = np.vstack([np.hstack([first.T, -second.T]), normalization])
    targets = np.array([0.0, 0.0, 0.0, 1.0])
    margin = max_margin(rows, np.zeros(6), [True] * 6, equalities, targets)
    return margin is not None and margin > tol


def _chart_boxes_overlap(first: FloatArray, second: FloatArray, tol: float) -> bool:
    a = np.array([chart_point(c) for c in first])
    b = np.array([chart_point(c) for c in second])
    return bool(
        np.all(a.min(axis=0) < b.max(axis=0) + tol)
        and np.all(b.min(axis=0) < a.max(axis=0) + tol)
    )


def tiles_disjoint(atlas: TilingAtlas, tol: float = 1e-9) -> DisjointnessReport:
    """Check that tile interiors are pairwise disjoint.

    Neighbors in the tree must lie on opposite sides of the plane of their
    shared edge. Other pairs whose chart bounding boxes meet are decided by
    a linear program.
    """
    tiles = atlas.tiles
    overlapping: List[Tuple[int, int]] = []
    adjacent = set()
    residual = 0.0
    for parent_index, child_index in atlas.tree_edges():
        parent, child = tiles[parent_index], tiles[child_index]
        slot = child.node.slot
        adjacent.add((parent_index, child_index))
        shared = [child.corner_key(k) for k in child.edge(slot)]
        for key in shared:
            mine = child.corners[_matching_slot(child.node, key)]
            theirs = parent.corners[_matching_slot(parent.node, key)]
            residual = max(residual, float(np.max(np.abs(mine - theirs))))
        normal = np.cross(*(child.corners[k] for k in child.edge(slot)))
        sides = normal @ parent.corners[slot], normal @ child.corners[slot]
        if min(abs(sides[0]), abs(sides[1])) <= tol or sides[0] * sides[1] > 0:
            overlapping.append((parent_index, child_index))
    checked = len(adjacent)
    for i, j in itertools.combinations(range(len(tiles)), 2):
        if (i, j) in adjacent:
            continue
        checked += 1
        if not _chart_boxes_overlap(tiles[i].corners, tiles[j].corners, tol):
            continue
        if _cones_overlap(tiles[i].corners, tiles[j].corners, tol):
            overlapping.append((i, j))
    logger.info("Checked %d tile pairs, %d overlap", checked, len(overlapping))
    return DisjointnessReport(checked, len(adjacent), overlapping, residual)


def opposite_sign_witness(atlas: TilingAtlas, direction: Sequence[float]) -> bool:
    """Whether a direction lies outside every tile of the atlas."""
    return atlas.locate(direction) is None


@dataclass(frozen=True, eq=False)
class Realization:
    """A crooked fundamental domain whose deformation has a requested
    direction of Margulis invariants.

    .. attribute:: coefficients

       ``(u⁺ᵢ, u⁻ᵢ)`` per face of the tile's extension.

    .. attribute:: reflected

       True when the domain is the point reflection of a crooked domain,
       which happens for tiles of negative chirality.
    """

    direction: FloatArray
    tile: Tile
    region: TileRegion
    weights: FloatArray
    coefficients: Tuple[Coefficients, Coefficients, Coefficients]
    domain: AffineFundamentalDomain
    crooked: AffineFundamentalDomain
    alpha: AlphaTriple
    reflected: bool
    disjoint: bool

    @property
    def kind(self) -> str:
        return "triangle" if self.region is TileRegion.INTERIOR else "quadrilateral"


def _rotated_to_face(
    ext: CoxeterExtension, n: FloatArray, face: int
) -> Tuple[CoxeterExtension, FloatArray]:
    # Relabel so that ``face`` becomes face 0. The fixed point of the rotated
    # product is the image of n under ι0, then ι1.
    for _ in range(face):
        i0 = ext.iotas[0]
        ext, n = ext.rotated(), i0(n)
    return ext, n


def realize_direction(
    atlas: TilingAtlas, direction: Sequence[float], center: Point = ORIGIN
) -> Realization:
    """Build a domain with Margulis invariants proportional to a direction.

    Interior directions give a crooked ideal triangle, edge directions an
    edge quadrilateral. Corners are never proper.
    """
    d = _unit_direction(direction)
    found = atlas.locate(d)
    if found is None:
        raise NotTameError(
            f"{d} lies outside all tiles of depth {atlas.depth}", atlas.depth
        )
    t, region = found
    if region is TileRegion.CORNER:
        raise DomainError(f"{d} is a corner of tile {t.index}; corners are not proper")
    weights = barycentric(t, d)
    weights[np.abs(weights) <= TILE_EPSILON] = 0.0
    magnitudes = [0.0, 0.0, 0.0]
    for slot, face in enumerate(t.index_map):
        magnitudes[face] = float(weights[slot]) / t.face_scales[face]
    coefficients = tuple((m, m) for m in magnitudes)

    crooked_domain: AffineFundamentalDomain
    coxeter = affine_coxeter(t.extension, t.n, coefficients, center)
    node_alpha = coxeter.alpha()
    if region is TileRegion.INTERIOR:
        crooked_domain, disjoint = coxeter, cit_disjointness_check(coxeter.cit)
    else:
        empty = magnitudes.index(0.0)
        ext, n = _rotated_to_face(t.extension, t.n, empty)
        u1, u2 = (coefficients[(empty + k) % 3] for k in (1, 2))
        quadrilateral = edge_quadrilateral(ext, n, u1, u2, center)
        crooked_domain, disjoint = quadrilateral, quadrilateral.disjoint

    alpha = t.to_base(node_alpha)
    reflected = t.chirality < 0
    domain = crooked_domain.reflected() if reflected else crooked_domain
    if reflected:
        alpha = -alpha
    logger.info(
        "Realized %s in tile %d (%s) with invariants %s",
        d,
        t.index,
        region.value,
        alpha,
    )
    return Realization(
        d,
        t,
        region,
        weights,
        coefficients,  # type: ignore[arg-type]
        domain,
        crooked_domain,
        tuple(float(x) for x in alpha),  # type: ignore[arg-type]
        reflected,
        disjoint,
    )
