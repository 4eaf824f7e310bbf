import numpy as np
import pytest

from crookedtiles.crooked import (
    analyze_cit,
    cit_disjointness_check,
    CrookedHalfspace,
    CrookedIdealTriangle,
    CrookedPlane,
    halfspace_contains,
    halfspaces_disjoint,
    in_translational_semigroup,
    mesh_crooked_plane,
    normalize_vertices,
    overlapping_pairs,
    ParallelCrookedSlab,
    stem_hinge_ray,
    Strictness,
    TriangleMesh,
)
from crookedtiles.hyperbolic import ideal_triangle_from_cusps, IdealTriangle
from crookedtiles.lorentz import E1, E2, E3, null_frame, ORIGIN, Point
from crookedtiles.utilities import DegenerateConfigurationError, DomainError

from .helpers import generator, parse_obj, random_unit_spacelike


def symmetric_triangle() -> IdealTriangle:
    angles = np.array([0.3, 0.3 + 2.0 * np.pi / 3.0, 0.3 + 4.0 * np.pi / 3.0])
    cusps = (np.array([np.cos(t), np.sin(t), 1.0]) for t in angles)
    return ideal_triangle_from_cusps(*cusps)


def random_cit(rng: np.random.Generator) -> CrookedIdealTriangle:
    coefficients = [tuple(pair) for pair in rng.uniform(0.1, 5.0, size=(3, 2))]
    center = Point(rng.normal(size=3))
    return CrookedIdealTriangle.from_coefficients(
        symmetric_triangle(), center, coefficients
    )


class TestHalfspace:
    def test_sectors(self) -> None:
        H = CrookedHalfspace.create(E1, ORIGIN)
        assert halfspace_contains(H, Point(np.array([0.0, -1.0, 0.0])))
        assert not halfspace_contains(H, Point(np.array([0.0, 1.0, 0.0])))
        assert halfspace_contains(H.opposite(), Point(np.array([0.0, 1.0, 0.0])))

    def test_vertex_is_on_boundary(self) -> None:
        H = CrookedHalfspace.create(E1, ORIGIN)
        assert not halfspace_contains(H, ORIGIN)
        assert halfspace_contains(H, ORIGIN, Strictness.CLOSED)

    def test_opposite_partitions_space(self) -> None:
        rng = generator(30)
        for _ in range(5):
            H = CrookedHalfspace.create(
                random_unit_spacelike(rng), Point(rng.normal(size=3))
            )
            points = rng.normal(scale=5.0, size=(2000, 3))
            inside = H.contains_points(points)
            outside = H.opposite().contains_points(points)
            assert not np.any(inside & outside)
            assert np.all(inside | outside)

    def test_translated(self) -> None:
        H = CrookedHalfspace.create(E1, ORIGIN)
        v = np.array([0.5, 2.0, -1.0])
        points = generator(31).normal(size=(500, 3))
        moved = H.translated(v).contains_points(points + v)
        assert np.array_equal(moved, H.contains_points(points))

    def test_semigroup(self) -> None:
        frame = null_frame(E1)
        assert in_translational_semigroup(frame, frame.translation(2.0, 3.0))
        assert not in_translational_semigroup(frame, frame.translation(-1.0, 3.0))
        assert not in_translational_semigroup(frame, frame.translation(2.0, 3.0) + E1)
        assert in_translational_semigroup(
            frame, frame.translation(0.0, 3.0), Strictness.CLOSED
        )
        assert not in_translational_semigroup(frame, frame.translation(0.0, 3.0))

    def test_translate_into_semigroup_shrinks(self) -> None:
        frame = null_frame(E1)
        H = CrookedHalfspace(frame, ORIGIN)
        smaller = H.translated(frame.translation(1.0, 2.0))
        points = generator(32).normal(scale=4.0, size=(3000, 3))
        assert not np.any(smaller.contains_points(points) & ~H.contains_points(points))


class TestDisjointness:
    def test_opposite(self) -> None:
        H = CrookedHalfspace.create(E1, Point(np.array([1.0, 2.0, 3.0])))
        assert halfspaces_disjoint(H, H.opposite())
        assert not halfspaces_disjoint(H, H.opposite(), Strictness.CLOSED)

    def test_translate_overlaps(self) -> None:
        H = CrookedHalfspace.create(E2, ORIGIN)
        assert not halfspaces_disjoint(H, H.translated((0.3, -0.2, 0.1)))

    def test_positive_coefficients(self) -> None:
        rng = generator(33)
        for _ in range(10):
            assert cit_disjointness_check(random_cit(rng))

    def test_planted_overlap(self) -> None:
        rng = generator(34)
        for first in range(3):
            coefficients = [tuple(pair) for pair in rng.uniform(0.1, 5.0, size=(3, 2))]
            for face in (first, (first + 1) % 3):
                u_plus, u_minus = coefficients[face]
                coefficients[face] = (-u_plus, -u_minus)
            cit = CrookedIdealTriangle.from_coefficients(
                symmetric_triangle(), ORIGIN, coefficients
            )
            assert not cit_disjointness_check(cit)
            pair = tuple(sorted((first, (first + 1) % 3)))
            assert pair in overlapping_pairs(cit.halfspaces())


class TestIdealTriangle:
    def test_structure(self) -> None:
        rng = generator(35)
        for _ in range(20):
            center = Point(rng.normal(size=3))
            coefficients = rng.uniform(0.1, 5.0, size=(3, 2))
            cit = CrookedIdealTriangle.from_coefficients(
                symmetric_triangle(), center, coefficients
            )
            analysis = analyze_cit(cit)
            read_back = np.array(analysis.coefficients)
            assert analysis.center.coordinates == pytest.approx(
                center.coordinates, abs=1e-8
            )
            assert read_back == pytest.approx(coefficients, abs=1e-8)
            assert analysis.nondegenerate
            assert all(slab is not None for slab in analysis.slabs)

    def test_center_ignores_vertex_order(self) -> None:
        cit = random_cit(generator(36))
        sides, vertices = cit.triangle.sides, cit.vertices
        order = (2, 0, 1)
        first, _ = normalize_vertices(sides, vertices)
        second, _ = normalize_vertices(
            [sides[i] for i in order], [vertices[i] for i in order]
        )
        assert first.coordinates == pytest.approx(second.coordinates, abs=1e-12)

    def test_degenerate_coefficients(self) -> None:
        cit = CrookedIdealTriangle.from_coefficients(
            symmetric_triangle(), ORIGIN, ((1.0, 1.0), (-1.0, 2.0), (0.5, 0.5))
        )
        analysis = analyze_cit(cit)
        assert not analysis.nondegenerate
        assert analysis.slabs[1] is None
        assert analysis.slabs[0] is not None

    def test_dependent_sides(self) -> None:
        with pytest.raises(DegenerateConfigurationError):
            normalize_vertices((E1, E1, E2), (ORIGIN, ORIGIN, ORIGIN))

    def test_decomposition_covers_triangle(self) -> None:
        rng = generator(37)
        cit = random_cit(rng)
        analysis = analyze_cit(cit)
        points = cit.vertices[0].coordinates + rng.normal(scale=6.0, size=(5000, 3))
        inside = cit.contains_points(points)
        assert np.any(inside)
        assert np.all(analysis.contains_points(points)[inside])

    def test_interior_is_smaller(self) -> None:
        rng = generator(38)
        cit = random_cit(rng)
        points = rng.normal(scale=6.0, size=(2000, 3))
        interior = cit.interior_contains_points(points)
        assert not np.any(interior & ~cit.contains_points(points))


class TestSlab:
    def test_slab(self) -> None:
        frame = null_frame(E1)
        slab = ParallelCrookedSlab(frame, ORIGIN, ORIGIN + frame.translation(1.0, 1.0))
        assert slab.contains_points(np.zeros((1, 3)))[0]

    def test_wrong_direction(self) -> None:
        frame = null_frame(E1)
        with pytest.raises(DomainError):
            ParallelCrookedSlab(frame, ORIGIN, ORIGIN + frame.translation(-1.0, 1.0))


class TestHingeRay:
    def test_not_in_stem_plane(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        with pytest.raises(DomainError):
            stem_hinge_ray(plane, Point(E1), plane.frame.plus)

    def test_not_parallel_to_hinge(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        with pytest.raises(DomainError):
            stem_hinge_ray(plane, ORIGIN, E3)

    def test_hinge_itself(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        with pytest.raises(DegenerateConfigurationError):
            stem_hinge_ray(plane, ORIGIN, plane.frame.plus)

    def test_ray_starts_on_hinge(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        frame = plane.frame
        base = Point(2.0 * frame.minus)
        ray = stem_hinge_ray(plane, base, frame.plus)
        assert ray.origin.coordinates == pytest.approx(2.0 * frame.minus, abs=1e-12)
        along = ray.origin.coordinates + 3.0 * ray.direction
        assert plane.contains_points(along[None, :])[0]


class TestMesh:
    def test_crooked_plane(self) -> None:
        director = random_unit_spacelike(generator(39))
        plane = CrookedPlane(CrookedHalfspace.create(director, Point(E3)))
        mesh = mesh_crooked_plane(plane, 10.0, segments=12)
        assert len(mesh.vertices) == 73
        assert len(mesh.faces) == 72
        assert set(mesh.labels) == {"stem", "wing+", "wing-"}
        assert np.all(plane.contains_points(np.array(mesh.vertices), eps=1e-7))
        offsets = np.array(mesh.vertices) - E3
        assert np.max(np.linalg.norm(offsets, axis=1)) == pytest.approx(10.0)

    def test_hinges_are_shared(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        mesh = mesh_crooked_plane(plane, 1.0, segments=4)
        shared = [labels for labels in mesh.vertex_labels().values() if len(labels) > 1]
        # The vertex and the four hinge endpoints.
        assert len(shared) == 5

    def test_bad_radius(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        with pytest.raises(DomainError):
            mesh_crooked_plane(plane, 0.0)

    def test_obj(self) -> None:
        plane = CrookedPlane(CrookedHalfspace.create(E1, ORIGIN))
        mesh = mesh_crooked_plane(plane, 2.0, segments=3)
        combined = TriangleMesh()
        combined.extend(mesh, "face0/")
        combined.extend(mesh, "face1/")
        vertices, faces, objects = parse_obj(combined.to_obj())
        assert len(vertices) == 2 * len(mesh.vertices)
        assert len(faces) == 2 * len(mesh.faces)
        assert objects == {
            "face0/stem": 6, "face0/wing+": 6, "face0/wing-": 6,
            "face1/stem": 6, "face1/wing+": 6, "face1/wing-": 6,
        }
        assert max(max(face) for face in faces) == len(vertices) - 1
