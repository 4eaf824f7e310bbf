from typing import Tuple

import numpy as np
import pytest

from crookedtiles.config import Config
from crookedtiles.deformation import affine_coxeter, AffineCoxeter, edge_quadrilateral
from crookedtiles.utilities import DomainError
from crookedtiles.verification import (
    hinge_ray_residual,
    run_suites,
    sample_interior,
    SUITES,
    verify_fundamental_domain,
)

from .helpers import EQUILATERAL, FIXTURE_TRACES, generator


def coxeter() -> AffineCoxeter:
    coefficients = [(1.0, 2.0), (0.5, 0.5), (2.0, 1.0)]
    return affine_coxeter(EQUILATERAL.ext, EQUILATERAL.n, coefficients)


CHEAP = ["kernel", "gram", "structure", "rank_one", "farey"]


class TestSuites:
    def test_registry(self) -> None:
        assert len(SUITES) == 12
        assert "disjointness" in SUITES

    def test_cheap_suites_pass(self) -> None:
        results = run_suites(Config(depth=2), CHEAP)
        assert [r.name for r in results] == CHEAP
        for result in results:
            assert result.passed, result
            assert result.residual < 1e-7

    def test_tight_residual_tolerance_fails(self) -> None:
        (result,) = run_suites(Config(residual_tolerance=1e-30), ["three_terms"])
        assert not result.passed

    @pytest.mark.parametrize(
        "name",
        ["kernel", "gram", "structure", "rank_one", "tiling", "opposite_sign"],
    )
    def test_tampered_tolerance_fails(self, name: str) -> None:
        (result,) = run_suites(Config(depth=2, tolerance=1e-30), [name])
        assert result.name == name
        assert not result.passed

    def test_deterministic(self) -> None:
        first = run_suites(Config(seed=5), ["structure"])
        second = run_suites(Config(seed=5), ["structure"])
        assert first == second

    def test_unknown_suite(self) -> None:
        with pytest.raises(DomainError):
            run_suites(Config(), ["nonsense"])

    def test_farey_detail(self) -> None:
        (result,) = run_suites(Config(), ["farey"])
        assert result.detail == "3070 nodes to depth 10, 0 label mismatches"

    def test_rank_one_follows_depth(self) -> None:
        (result,) = run_suites(Config(depth=5), ["rank_one"])
        assert result.passed, result
        assert result.detail == "94 superbases to depth 5"

    def test_three_terms_follows_traces(self) -> None:
        (result,) = run_suites(Config(traces=(4.0, 4.0, 4.0)), ["three_terms"])
        assert result.passed, result
        assert result.detail == "traces 4,4,4"

    def test_flip_identity_names_traces(self) -> None:
        (result,) = run_suites(Config(traces=(5.0, 4.0, 4.0)), ["flip_identity"])
        assert result.passed, result
        assert "3,3,3 4,4,4 5,4,4" in result.detail
        assert "to depth 2" in result.detail

    def test_opposite_sign_minimum_depth(self) -> None:
        (result,) = run_suites(Config(depth=2), ["opposite_sign"])
        assert result.passed, result
        assert "to depth 6" in result.detail

    @pytest.mark.parametrize("traces", FIXTURE_TRACES)
    def test_tiling_follows_config(self, traces: Tuple[float, float, float]) -> None:
        (result,) = run_suites(Config(traces=traces, depth=4), ["tiling"])
        assert result.passed, result
        assert result.detail == "46 tiles to depth 4"

    def test_domain_sampling(self) -> None:
        (result,) = run_suites(Config(samples=500, word_length=3), ["domain_sampling"])
        assert result.passed, result
        assert "to depth 4" in result.detail


class TestDomainSampling:
    def test_samples_are_inside(self) -> None:
        domain = coxeter()
        points, attempts = sample_interior(domain, 100, generator(50))
        assert points.shape == (100, 3)
        assert attempts >= 100
        assert np.all(domain.interior_contains_points(points))

    def test_report(self) -> None:
        report = verify_fundamental_domain(coxeter(), max_length=2, samples=100, seed=3)
        assert report.passed
        assert report.samples == 100
        assert report.elements == 3 + 6

    def test_word_length(self) -> None:
        with pytest.raises(DomainError):
            verify_fundamental_domain(coxeter(), max_length=0)


class TestHingeRays:
    def test_rays_on_hinges(self) -> None:
        u1, u2 = (1.5, 0.5), (0.7, 2.0)
        quadrilateral = edge_quadrilateral(EQUILATERAL.ext, EQUILATERAL.n, u1, u2)
        first, second = quadrilateral.hinge_rays
        assert first is not None and second is not None
        sides = quadrilateral.triangle.sides
        assert hinge_ray_residual(sides[2], first, *u2) < 1e-7
        assert hinge_ray_residual(sides[1], second, *u1) < 1e-7
