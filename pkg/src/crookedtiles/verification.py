"""
crookedtiles/verification
~~~~~~~~~~~~~~~~~~~~~~~~~

Sampled checks that a crooked domain is a fundamental domain, and the named
property suites run by ``crookedtiles verify``.

Every suite draws from its own Philox stream spawned from the configured
seed, so reruns are reproducible and suites are independent of each other.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from .config import Config
from .crooked import analyze_cit, cit_disjointness_check, CrookedIdealTriangle, HingeRay
from .deformation import (
    affine_coxeter,
    AffineFundamentalDomain,
    alpha_coordinates,
    alpha_via_lemma,
    corner_matrices,
    edge_quadrilateral,
    margulis_invariant,
)
from .farey import (
    BASE_TRIPLE,
    canonical_order,
    enumerate_tree,
    FareyTriple,
    word_fraction,
)
from .hyperbolic import ideal_triangle_from_cusps, IdealTriangle
from .lorentz import G, inner_rows, linear_involution, null_frame, ORIGIN, Point
from .surface import (
    CoxeterExtension,
    coxeter_extension,
    fixed_point_cycle,
    FuchsianRep,
    rep_from_traces,
)
from .tiling import (
    enumerate_tiles,
    flip_covector_identity,
    opposite_sign_witness,
    realize_direction,
    tiles_disjoint,
    TilingAtlas,
)
from .typing import FloatArray
from .utilities import DegenerateConfigurationError, DomainError

logger = logging.getLogger(__name__)

# Triangle sides have Gram matrix with −1 off the diagonal.
IDEAL_TRIANGLE_GRAM = np.array(
    [[1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
)


@dataclass(frozen=True)
class DomainReport:
    samples: int
    attempts: int
    elements: int
    violations: int
    worst_element: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _generator(seed: Union[int, np.random.SeedSequence]) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def sample_interior(
    domain: AffineFundamentalDomain,
    samples: int,
    rng: np.random.Generator,
    max_rounds: int = 200,
) -> Tuple[FloatArray, int]:
    """Rejection sample points of the open domain from its sampling box.

    Returns the points and the number of candidates drawn.
    """
    low, high = domain.sampling_box()
    batch = max(samples, 1024)
    found: List[FloatArray] = []
    count = attempts = 0
    for _ in range(max_rounds):
        candidates = rng.uniform(low, high, size=(batch, 3))
        attempts += batch
        inside = candidates[domain.interior_contains_points(candidates)]
        found.append(inside)
        count += len(inside)
        if count >= samples:
            break
    if count < samples:
        raise DegenerateConfigurationError(
            f"Only {count} of {samples} samples landed in the domain"
        )
    return np.concatenate(found)[:samples], attempts


def verify_fundamental_domain(
    domain: AffineFundamentalDomain,
    max_length: int = 4,
    samples: int = 2000,
    seed: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> DomainReport:
    """Count sample points of the open domain mapped back into it by
    nontrivial group elements of word length at most ``max_length``.
    """
    if max_length < 1:
        raise DomainError(f"Word length must be at least 1, got {max_length}")
    rng = rng if rng is not None else _generator(seed)
    points, attempts = sample_interior(domain, samples, rng)
    elements = domain.group_elements(max_length)
    violations = 0
    worst, worst_count = None, 0
    for index, g in enumerate(elements):
        hits = int(np.sum(domain.interior_contains_points(g.transform(points))))
        violations += hits
        if hits > worst_count:
            worst, worst_count = index, hits
    logger.info(
        "%d violations over %d samples and %d elements",
        violations,
        samples,
        len(elements),
    )
    return DomainReport(samples, attempts, len(elements), violations, worst)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""


Suite = Callable[[Config, np.random.Generator], SuiteResult]


def _random_vectors(rng: np.random.Generator, shape: Tuple[int, ...]) -> FloatArray:
    return rng.normal(size=shape + (3,))


def _random_triangle(rng: np.random.Generator, eps: float) -> IdealTriangle:
    angles = rng.uniform(0.0, 2.0 * np.pi) + np.array([0.0, 2.0, 4.0]) * np.pi / 3.0
    angles += rng.uniform(-0.5, 0.5, size=3)
    cusps = [np.array([np.cos(t), np.sin(t), 1.0]) for t in angles]
    return ideal_triangle_from_cusps(*cusps, eps=eps)


def _random_coefficients(
    rng: np.random.Generator, count: int
) -> List[Tuple[float, float]]:
    pairs = rng.uniform(0.1, 10.0, size=(count, 2))
    return [(float(u_plus), float(u_minus)) for u_plus, u_minus in pairs]


def _base_frame(config: Config) -> Tuple[FuchsianRep, CoxeterExtension, FloatArray]:
    rep = rep_from_traces(*config.traces)
    ext = coxeter_extension(rep)
    cycle = fixed_point_cycle(ext, config.fixed_point_choice, config.tolerance)
    return rep, ext, cycle.n


def kernel_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    u1, v1, u2, v2 = _random_vectors(rng, (4, 10_000))
    left = inner_rows(np.cross(u1, v1) @ G, np.cross(u2, v2) @ G)
    right = inner_rows(u1, u2) * inner_rows(v1, v2)
    right -= inner_rows(u1, v2) * inner_rows(v1, u2)
    scale = np.maximum(1.0, np.abs(right))
    residual = float(np.max(np.abs(left + right) / scale))
    for axis in _random_vectors(rng, (100,)):
        involution = linear_involution(axis)
        square = involution @ involution
        scale = max(1.0, float(np.max(np.abs(involution.matrix)))) ** 2
        error = max(
            float(np.max(np.abs(square.matrix - np.eye(3)))),
            involution.lorentz_residual(),
        )
        residual = max(residual, error / scale)
    return SuiteResult("kernel", residual < config.tolerance, residual)


def gram_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    residual = 0.0
    for _ in range(50):
        gram = _random_triangle(rng, config.tolerance).gram()
        residual = max(residual, float(np.max(np.abs(gram - IDEAL_TRIANGLE_GRAM))))
    return SuiteResult("gram", residual < 10.0 * config.tolerance, residual)


def structure_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    residual = 0.0
    for _ in range(500):
        triangle = _random_triangle(rng, config.tolerance)
        center = Point(rng.normal(size=3))
        coefficients = _random_coefficients(rng, 3)
        cit = CrookedIdealTriangle.from_coefficients(triangle, center, coefficients)
        analysis = analyze_cit(cit, config.tolerance)
        read_back = np.array(analysis.coefficients) - np.array(coefficients)
        error = max(
            float(np.max(np.abs(analysis.center - center))),
            float(np.max(np.abs(read_back))),
        )
        # Coefficients are drawn up to 10.
        residual = max(residual, error / 10.0)
        if not analysis.nondegenerate:
            detail = "positive coefficients read back as degenerate"
            return SuiteResult("structure", False, residual, detail)
    return SuiteResult("structure", residual < config.tolerance, residual)


def disjointness_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    missed = planted = 0
    for _ in range(200):
        triangle = _random_triangle(rng, config.tolerance)
        center = Point(rng.normal(size=3))
        coefficients = _random_coefficients(rng, 3)
        cit = CrookedIdealTriangle.from_coefficients(triangle, center, coefficients)
        if not cit_disjointness_check(cit, config.lp_margin):
            missed += 1
        # Moving two vertices against their semigroups puts the center inside
        # both halfspaces.
        first = int(rng.integers(3))
        for face in (first, (first + 1) % 3):
            u_plus, u_minus = coefficients[face]
            coefficients[face] = (-u_plus, -u_minus)
        tampered = CrookedIdealTriangle.from_coefficients(
            triangle, center, coefficients
        )
        if not cit_disjointness_check(tampered, config.lp_margin):
            planted += 1
    detail = (
        f"{missed} positive configurations overlapped, "
        f"{200 - planted} planted overlaps missed"
    )
    passed = missed == 0 and planted == 200
    return SuiteResult("disjointness", passed, float(missed + 200 - planted), detail)


def three_terms_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    """Margulis invariants from the definition, from the vertex offsets and
    from the corner matrices, for the configured traces.
    """
    _, ext, n = _base_frame(config)
    matrices = corner_matrices(ext, n, config.tolerance)
    neutral = ext.neutral_vectors()
    residual = 0.0
    for _ in range(500):
        coefficients = [tuple(pair) for pair in rng.uniform(-10.0, 10.0, size=(3, 2))]
        coxeter = affine_coxeter(ext, n, coefficients)  # type: ignore[arg-type]
        direct = np.array(alpha_coordinates(coxeter.cocycle(), BASE_TRIPLE))
        lemma = np.array(alpha_via_lemma(coxeter.offsets, neutral))
        terms = 2.0 * sum(m @ np.array(u) for m, u in zip(matrices, coefficients))
        scale = max(1.0, float(np.max(np.abs(direct))))
        residual = max(
            residual,
            float(np.max(np.abs(direct - lemma))) / scale,
            float(np.max(np.abs(direct - terms))) / scale,
        )
        A, _, _ = coxeter.boosts()
        alpha = margulis_invariant(A)
        for power in (-1, 2, 3):
            error = abs(margulis_invariant(A.power(power)) - abs(power) * alpha)
            residual = max(residual, error / scale)
    detail = f"traces {_traces_label(config.traces)}"
    passed = residual < config.residual_tolerance
    return SuiteResult("three_terms", passed, residual, detail)


def rank_one_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    rep = rep_from_traces(*config.traces)
    ratio = zero_row = 0.0
    nodes = enumerate_tree(config.depth)
    for node in nodes:
        ext = CoxeterExtension.for_triple(rep, node.triple)
        n = fixed_point_cycle(ext, config.fixed_point_choice, config.tolerance).n
        for face, m in enumerate(corner_matrices(ext, n, config.tolerance)):
            singular_values = np.linalg.svd(m, compute_uv=False)
            ratio = max(ratio, float(singular_values[1] / singular_values[0]))
            row = float(np.max(np.abs(m[(face + 2) % 3])))
            zero_row = max(zero_row, row / float(singular_values[0]))
    residual = max(ratio, zero_row)
    detail = f"{len(nodes)} superbases to depth {config.depth}"
    return SuiteResult("rank_one", residual < 10.0 * config.tolerance, residual, detail)


def _expected_tiles(depth: int) -> int:
    return 3 * 2 ** depth - 2


def _traces_label(traces: Iterable[float]) -> str:
    return ",".join(f"{x:g}" for x in traces)


def _atlas(config: Config, depth: Optional[int] = None) -> TilingAtlas:
    return enumerate_tiles(
        rep_from_traces(*config.traces),
        config.depth if depth is None else depth,
        config.fixed_point_choice,
        tol=config.tolerance,
    )


def tiling_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    atlas = _atlas(config)
    report = tiles_disjoint(atlas, config.lp_margin)
    failures = []
    if len(atlas.tiles) != _expected_tiles(config.depth):
        failures.append(f"{len(atlas.tiles)} tiles")
    if atlas.boundary_edges != 3 * 2 ** config.depth:
        failures.append(f"{atlas.boundary_edges} boundary edges")
    if not atlas.is_convex(config.tolerance):
        failures.append("chart polygon not convex")
    if not report.disjoint:
        failures.append(f"overlapping tiles {report.overlapping}")
    residual = report.shared_edge_residual
    if residual >= config.residual_tolerance:
        failures.append("shared edges disagree")
    detail = "; ".join(failures) or f"{len(atlas.tiles)} tiles to depth {config.depth}"
    return SuiteResult("tiling", not failures, residual, detail)


#: Trace triples checked by the flip suite besides the configured one.
FLIP_REFERENCE_TRACES = ((3.0, 3.0, 3.0), (4.0, 4.0, 4.0))
#: Deepest tree edge on which the flip suite multiplies out cocycles.
FLIP_DEPTH = 2


def flip_identity_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    """The flip identity on the tree edges near the root, for the configured
    traces and for the modular and equilateral tori.
    """
    residual = 0.0
    positive = True
    depth = min(config.depth, FLIP_DEPTH)
    nodes = enumerate_tree(depth)
    traces_checked = sorted({tuple(config.traces), *FLIP_REFERENCE_TRACES})
    for traces in traces_checked:
        rep = rep_from_traces(*traces)
        for node in nodes[1:]:
            parent = nodes[node.parent]  # type: ignore[index]
            identity = flip_covector_identity(rep, parent, node)
            residual = max(residual, identity.residual)
            positive = positive and min(identity.coefficients) > 0
    labels = " ".join(_traces_label(traces) for traces in traces_checked)
    detail = (
        f"traces {labels} to depth {depth} "
        f"(cocycles multiplied out to depth at most {FLIP_DEPTH})"
    )
    passed = positive and residual < config.residual_tolerance
    return SuiteResult("flip_identity", passed, residual, detail)


def _interior_direction(atlas: TilingAtlas, rng: np.random.Generator) -> FloatArray:
    t = atlas.tiles[int(rng.integers(len(atlas.tiles)))]
    weights = rng.dirichlet(np.ones(3)) * 0.9 + 0.1 / 3.0
    return weights @ t.corners


#: Deformations sampled by the domain suite.
DOMAIN_DEFORMATIONS = 5


def domain_sampling_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    atlas = _atlas(config)
    violations = 0
    for _ in range(DOMAIN_DEFORMATIONS):
        realization = realize_direction(atlas, _interior_direction(atlas, rng))
        report = verify_fundamental_domain(
            realization.domain, config.word_length, config.samples, rng=rng
        )
        violations += report.violations
    detail = (
        f"{DOMAIN_DEFORMATIONS} deformations in tiles to depth {config.depth}, "
        f"{config.samples} samples each, words up to length {config.word_length}"
    )
    return SuiteResult("domain_sampling", violations == 0, float(violations), detail)


#: Smallest atlas depth checked by the opposite sign suite.
OPPOSITE_SIGN_DEPTH = 6


def opposite_sign_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    depth = max(config.depth, OPPOSITE_SIGN_DEPTH)
    atlas = _atlas(config, depth)
    directions = [np.array([1.0, -1.0, 1.0])]
    for _ in range(20):
        a, b, c = rng.uniform(0.1, 1.0, size=3)
        directions.append(np.array([a, -b, c * rng.choice([-1.0, 1.0])]))
    found = sum(not opposite_sign_witness(atlas, d) for d in directions)
    detail = (
        f"{len(directions)} directions against tiles to depth {depth} "
        f"(at least {OPPOSITE_SIGN_DEPTH})"
    )
    return SuiteResult("opposite_sign", found == 0, float(found), detail)


def edge_quadrilateral_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    _, ext, n = _base_frame(config)
    residual = 0.0
    failures = 0
    for _ in range(100):
        u1, u2 = _random_coefficients(rng, 2)
        quadrilateral = edge_quadrilateral(ext, n, u1, u2)
        if not quadrilateral.disjoint:
            failures += 1
        rays = quadrilateral.hinge_rays
        if (
            rays[0] is None
            or rays[1] is None
            or rays[0].direction[2] * rays[1].direction[2] >= 0
        ):
            failures += 1
            continue
        for ray, side, (u_plus, u_minus) in zip(rays, (2, 1), (u2, u1)):
            normal = quadrilateral.triangle.sides[side]
            residual = max(residual, hinge_ray_residual(normal, ray, u_plus, u_minus))
    passed = failures == 0 and residual < config.residual_tolerance
    return SuiteResult("edge_quadrilateral", passed, residual)


def hinge_ray_residual(
    side: FloatArray,
    ray: HingeRay,
    u_plus: float,
    u_minus: float,
    center: Point = ORIGIN,
) -> float:
    """Distance of a computed hinge ray from ``center + (−u⁺ − R⁺)s⁺`` or
    ``center + (u⁻ + R⁺)s⁻``, whichever null line it runs along.
    """
    frame = null_frame(side)
    heading = ray.direction / abs(ray.direction[2])

    def distance_to_line(d: FloatArray) -> float:
        return float(min(np.max(np.abs(heading - d)), np.max(np.abs(heading + d))))

    if distance_to_line(frame.plus) < distance_to_line(frame.minus):
        origin, expected = -u_plus * frame.plus, -frame.plus
    else:
        origin, expected = u_minus * frame.minus, frame.minus
    return max(
        float(np.max(np.abs(ray.origin - center - origin))),
        float(np.max(np.abs(heading - expected))),
    )


def farey_suite(config: Config, rng: np.random.Generator) -> SuiteResult:
    depth = 10
    nodes = enumerate_tree(depth)
    mismatches = 0
    for node in nodes:
        triple: FareyTriple = node.label
        canonical_order(triple)
        mismatches += sum(word_fraction(w) != x for w, x in zip(node.triple, triple))
    expected = 1 + 3 * (2 ** depth - 1)
    detail = f"{len(nodes)} nodes to depth {depth}, {mismatches} label mismatches"
    passed = len(nodes) == expected and mismatches == 0
    return SuiteResult("farey", passed, float(mismatches), detail)


SUITES: Dict[str, Suite] = {
    "kernel": kernel_suite,
    "gram": gram_suite,
    "structure": structure_suite,
    "disjointness": disjointness_suite,
    "three_terms": three_terms_suite,
    "rank_one": rank_one_suite,
    "tiling": tiling_suite,
    "flip_identity": flip_identity_suite,
    "domain_sampling": domain_sampling_suite,
    "opposite_sign": opposite_sign_suite,
    "edge_quadrilateral": edge_quadrilateral_suite,
    "farey": farey_suite,
}


def run_suites(
    config: Config, names: Optional[Iterable[str]] = None
) -> List[SuiteResult]:
    selected = list(SUITES) if names is None else list(names)
    unknown = [name for name in selected if name not in SUITES]
    if unknown:
        raise DomainError(f"Unknown suites {unknown}")
    streams = dict(zip(SUITES, np.random.SeedSequence(config.seed).spawn(len(SUITES))))
    results = []
    for name in selected:
        try:
            result = SUITES[name](config, _generator(streams[name]))
        except (DomainError, DegenerateConfigurationError) as error:
            result = SuiteResult(name, False, float("inf"), str(error))
        outcome = "pass" if result.passed else "fail"
        logger.info("Suite %s: %s (residual %.3g)", name, outcome, result.residual)
        results.append(result)
    return results
