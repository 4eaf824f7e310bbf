import numpy as np
import pytest

from crookedtiles.deformation import (
    affine_coxeter,
    AffineCoxeter,
    alpha_coordinates,
    alpha_matrix,
    alpha_via_lemma,
    Cocycle,
    cocycle_from_alpha,
    corner_matrices,
    edge_quadrilateral,
    evaluate_cocycle,
    margulis_invariant,
    PointReflection,
    reduced_words,
)
from crookedtiles.farey import BASE_TRIPLE, F2Word
from crookedtiles.lorentz import AffineIsometry, Isometry
from crookedtiles.utilities import DomainError
from crookedtiles.verification import verify_fundamental_domain

from .helpers import EQUILATERAL, Fixture, generator, MODULAR


def random_coefficients(
    rng: np.random.Generator, low: float = 0.1, high: float = 5.0
) -> list:
    return [tuple(pair) for pair in rng.uniform(low, high, size=(3, 2))]


def equilateral_coxeter(seed: int) -> AffineCoxeter:
    coefficients = random_coefficients(generator(seed))
    return affine_coxeter(EQUILATERAL.ext, EQUILATERAL.n, coefficients)


class TestCocycle:
    def test_from_values(self) -> None:
        generators = (MODULAR.rep.A, MODULAR.rep.B)
        u = Cocycle.from_values(generators, np.arange(6.0))
        assert u.ua == pytest.approx([0.0, 1.0, 2.0])
        assert u.values == pytest.approx(np.arange(6.0))
        with pytest.raises(DomainError):
            Cocycle.from_values(generators, np.arange(5.0))

    def test_evaluate(self) -> None:
        u = Cocycle.from_rep(MODULAR.rep, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
        g = evaluate_cocycle(u, F2Word("ab"))
        a, b = AffineIsometry(MODULAR.rep.A, u.ua), AffineIsometry(MODULAR.rep.B, u.ub)
        assert g.distance(a @ b) < 1e-12
        trivial = evaluate_cocycle(u, F2Word("aA"))
        assert trivial.distance(AffineIsometry.identity()) < 1e-12

    def test_coboundary_has_no_invariants(self) -> None:
        generators = (EQUILATERAL.rep.A, EQUILATERAL.rep.B)
        u = Cocycle.coboundary(generators, (0.3, -1.2, 2.0))
        alpha = alpha_coordinates(u, BASE_TRIPLE)
        assert alpha == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)

    def test_linear(self) -> None:
        rng = generator(40)
        generators = (EQUILATERAL.rep.A, EQUILATERAL.rep.B)
        u = Cocycle.from_values(generators, rng.normal(size=6))
        w = Cocycle.from_values(generators, rng.normal(size=6))
        total = np.array(alpha_coordinates(u + w.scaled(2.0), BASE_TRIPLE))
        alpha_u = np.array(alpha_coordinates(u, BASE_TRIPLE))
        alpha_w = np.array(alpha_coordinates(w, BASE_TRIPLE))
        assert total == pytest.approx(alpha_u + 2.0 * alpha_w, abs=1e-9)
        matrix = alpha_matrix(generators, BASE_TRIPLE)
        assert matrix @ u.values == pytest.approx(alpha_u, abs=1e-9)

    def test_cocycle_from_alpha(self) -> None:
        generators = (EQUILATERAL.rep.A, EQUILATERAL.rep.B)
        target = (1.0, -2.0, 0.5)
        u = cocycle_from_alpha(target, BASE_TRIPLE, generators)
        assert alpha_coordinates(u, BASE_TRIPLE) == pytest.approx(target, abs=1e-9)

    def test_undefined_for_identity(self) -> None:
        with pytest.raises(DomainError):
            margulis_invariant(AffineIsometry.pure_translation((1.0, 0.0, 0.0)))

    @pytest.mark.parametrize("length, count", [(1, 4), (2, 12), (3, 36)])
    def test_reduced_words(self, length: int, count: int) -> None:
        assert len(list(reduced_words(length))) == count


class TestAffineCoxeter:
    def test_three_ways_agree(self) -> None:
        rng = generator(41)
        ext, n = MODULAR.ext, MODULAR.n
        matrices = corner_matrices(ext, n)
        for _ in range(20):
            coefficients = random_coefficients(rng, -5.0, 5.0)
            coxeter = affine_coxeter(ext, n, coefficients)
            direct = np.array(alpha_coordinates(coxeter.cocycle(), BASE_TRIPLE))
            lemma = np.array(alpha_via_lemma(coxeter.offsets, ext.neutral_vectors()))
            terms = 2.0 * sum(m @ np.array(u) for m, u in zip(matrices, coefficients))
            assert lemma == pytest.approx(direct, abs=1e-7)
            assert terms == pytest.approx(direct, abs=1e-7)
            assert np.array(coxeter.alpha()) == pytest.approx(direct, abs=1e-7)

    def test_powers(self) -> None:
        coxeter = equilateral_coxeter(42)
        A, B, _ = coxeter.boosts()
        for g in (A, B):
            alpha = margulis_invariant(g)
            cubed = margulis_invariant(g.power(3))
            assert margulis_invariant(g.inverse()) == pytest.approx(alpha, abs=1e-8)
            assert cubed == pytest.approx(3.0 * alpha, abs=1e-7)

    def test_boost_linear_parts(self) -> None:
        coxeter = equilateral_coxeter(43)
        A, B, C = coxeter.boosts()
        assert A.linear.distance(EQUILATERAL.ext.A) < 1e-9
        assert B.linear.distance(EQUILATERAL.ext.B) < 1e-9
        assert (A @ B @ C).linear.distance(Isometry.identity()) < 1e-8

    def test_wrong_coefficient_count(self) -> None:
        with pytest.raises(DomainError):
            affine_coxeter(MODULAR.ext, MODULAR.n, [(1.0, 1.0)] * 2)

    def test_is_fundamental_domain(self) -> None:
        coxeter = equilateral_coxeter(44)
        report = verify_fundamental_domain(coxeter, max_length=3, samples=200, seed=1)
        assert report.violations == 0
        assert report.elements > 0


class TestCornerMatrices:
    @pytest.mark.parametrize("fixture", [MODULAR, EQUILATERAL])
    def test_rank_one(self, fixture: Fixture) -> None:
        for face, m in enumerate(corner_matrices(fixture.ext, fixture.n)):
            assert m.shape == (3, 2)
            singular_values = np.linalg.svd(m, compute_uv=False)
            assert singular_values[1] < 1e-8 * singular_values[0]
            assert m[(face + 2) % 3] == pytest.approx([0.0, 0.0], abs=1e-9)


class TestEdgeQuadrilateral:
    def test_positive_coefficients(self) -> None:
        rng = generator(45)
        for _ in range(5):
            u1, u2 = (tuple(pair) for pair in rng.uniform(0.1, 5.0, size=(2, 2)))
            quadrilateral = edge_quadrilateral(EQUILATERAL.ext, EQUILATERAL.n, u1, u2)
            assert quadrilateral.disjoint
            assert all(ray is not None for ray in quadrilateral.hinge_rays)
            assert len(quadrilateral.halfspaces()) == 4

    def test_rejects_non_positive(self) -> None:
        with pytest.raises(DomainError):
            edge_quadrilateral(MODULAR.ext, MODULAR.n, (1.0, 0.0), (1.0, 1.0))

    def test_planted_overlap(self) -> None:
        quadrilateral = edge_quadrilateral(
            MODULAR.ext, MODULAR.n, (-1.0, -1.0), (-2.0, -1.0), allow_degenerate=True
        )
        assert not quadrilateral.disjoint

    def test_group(self) -> None:
        quadrilateral = edge_quadrilateral(
            EQUILATERAL.ext, EQUILATERAL.n, (1.0, 2.0), (0.5, 1.5)
        )
        A, B = quadrilateral.generators()
        commutator = quadrilateral.evaluate(F2Word("abAB"))
        assert A.linear.distance(EQUILATERAL.ext.A) < 1e-9
        assert commutator.linear.distance(EQUILATERAL.rep.K) < 1e-6
        assert len(quadrilateral.group_elements(2)) == 16


class TestPointReflection:
    def test_reflection(self) -> None:
        coxeter = equilateral_coxeter(46)
        reflected = coxeter.reflected()
        assert isinstance(reflected, PointReflection)
        assert reflected.reflected() is coxeter
        points = generator(47).normal(scale=5.0, size=(500, 3))
        inside = coxeter.contains_points(points)
        assert np.array_equal(reflected.contains_points(-points), inside)
        for g, h in zip(coxeter.group_elements(2), reflected.group_elements(2)):
            assert h.translation == pytest.approx(-g.translation)
            assert h.linear.distance(g.linear) == 0.0
        low, high = reflected.sampling_box()
        original_low, original_high = coxeter.sampling_box()
        assert low == pytest.approx(-original_high)
        assert high == pytest.approx(-original_low)

    def test_no_halfspaces(self) -> None:
        coefficients = random_coefficients(generator(48))
        coxeter = affine_coxeter(MODULAR.ext, MODULAR.n, coefficients)
        with pytest.raises(DomainError):
            coxeter.reflected().halfspaces()

    def test_negates_invariants(self) -> None:
        coxeter = equilateral_coxeter(49)
        g = coxeter.boosts()[0]
        h = AffineIsometry(g.linear, -g.translation)
        assert margulis_invariant(h) == pytest.approx(-margulis_invariant(g))
