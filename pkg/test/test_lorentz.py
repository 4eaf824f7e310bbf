import numpy as np
import pytest

from crookedtiles.lorentz import (
    AffineIsometry,
    CausalClass,
    classify,
    cross,
    det3,
    E1,
    E3,
    future_unit,
    G,
    inner,
    inner_rows,
    Isometry,
    linear_involution,
    normalize_null,
    null_frame,
    ORIGIN,
    particle_involution,
    Point,
    unit,
)
from crookedtiles.utilities import DomainError

from .helpers import (
    generator,
    random_future_timelike,
    random_unit_spacelike,
    random_vectors,
)


class TestCausalClass:
    @pytest.mark.parametrize(
        "vector, expected",
        [
            ((0.0, 0.0, 0.0), CausalClass.ZERO),
            ((1.0, 0.0, 0.0), CausalClass.SPACELIKE),
            ((1.0, 0.0, 1.0), CausalClass.NULL_FUTURE),
            ((0.0, 1.0, -1.0), CausalClass.NULL_PAST),
            ((0.0, 0.0, 2.0), CausalClass.TIMELIKE_FUTURE),
            ((0.5, 0.0, -1.0), CausalClass.TIMELIKE_PAST),
        ],
    )
    def test_classify(self, vector: tuple, expected: CausalClass) -> None:
        assert classify(vector) is expected

    def test_is_future(self) -> None:
        assert CausalClass.NULL_FUTURE.is_future
        assert CausalClass.TIMELIKE_FUTURE.is_future
        assert not CausalClass.SPACELIKE.is_future

    def test_wrong_shape(self) -> None:
        with pytest.raises(DomainError):
            classify((1.0, 2.0))


class TestCross:
    def test_pairing_is_determinant(self) -> None:
        rng = generator(1)
        u, v, w = random_vectors(rng, 3)
        assert inner(cross(u, v), w) == pytest.approx(det3(u, v, w), abs=1e-12)

    def test_cross_product_identity(self) -> None:
        rng = generator(2)
        u1, v1, u2, v2 = (random_vectors(rng, 1000) for _ in range(4))
        left = inner_rows(np.cross(u1, v1) @ G, np.cross(u2, v2) @ G)
        right = inner_rows(u1, u2) * inner_rows(v1, v2)
        right -= inner_rows(u1, v2) * inner_rows(v1, u2)
        scale = max(1.0, float(np.max(np.abs(right))))
        assert np.max(np.abs(left + right)) < 1e-9 * scale

    def test_orthogonal(self) -> None:
        rng = generator(3)
        u, v = random_vectors(rng, 2)
        w = cross(u, v)
        assert inner(w, u) == pytest.approx(0.0, abs=1e-12)
        assert inner(w, v) == pytest.approx(0.0, abs=1e-12)


class TestNormalization:
    def test_unit(self) -> None:
        assert inner(unit((3.0, 4.0, 0.0)), unit((3.0, 4.0, 0.0))) == pytest.approx(1.0)
        timelike = unit((0.0, 0.0, 2.0))
        assert inner(timelike, timelike) == pytest.approx(-1.0)

    def test_unit_of_null(self) -> None:
        with pytest.raises(DomainError):
            unit((1.0, 0.0, 1.0))

    def test_future_unit_flips_past(self) -> None:
        assert future_unit((0.0, 0.0, -3.0)) == pytest.approx(E3)

    def test_normalize_null(self) -> None:
        assert normalize_null((-2.0, 0.0, -2.0)) == pytest.approx([1.0, 0.0, 1.0])

    def test_normalize_non_null(self) -> None:
        with pytest.raises(DomainError):
            normalize_null((1.0, 0.0, 0.0))


class TestNullFrame:
    def test_frame(self) -> None:
        rng = generator(4)
        for _ in range(20):
            s = random_unit_spacelike(rng)
            frame = null_frame(s)
            assert frame.plus[2] == pytest.approx(1.0)
            assert frame.minus[2] == pytest.approx(1.0)
            for v in (frame.plus, frame.minus):
                assert inner(v, v) == pytest.approx(0.0, abs=1e-9)
                assert inner(v, s) == pytest.approx(0.0, abs=1e-9)
            assert inner(cross(frame.plus, frame.minus), s) > 0

    def test_opposite_swaps(self) -> None:
        frame = null_frame(E1)
        opposite = frame.opposite()
        assert opposite.s == pytest.approx(-E1)
        assert opposite.plus == pytest.approx(frame.minus)
        assert opposite.minus == pytest.approx(frame.plus)

    def test_semigroup_coefficients(self) -> None:
        frame = null_frame(E1)
        v = frame.translation(2.0, 3.0) + 0.5 * frame.s
        assert frame.semigroup_coefficients(v) == pytest.approx((2.0, 3.0))

    def test_timelike_director(self) -> None:
        with pytest.raises(DomainError):
            null_frame(E3)


class TestIsometries:
    def test_involution(self) -> None:
        rng = generator(5)
        for _ in range(20):
            t = random_future_timelike(rng)
            iota = linear_involution(t)
            assert (iota @ iota).distance(Isometry.identity()) < 1e-9
            assert iota.lorentz_residual() < 1e-9
            assert iota(t) == pytest.approx(t)
            assert np.linalg.det(iota.matrix) == pytest.approx(1.0)

    def test_null_axis(self) -> None:
        with pytest.raises(DomainError):
            linear_involution((1.0, 0.0, 1.0))

    def test_inverse(self) -> None:
        rng = generator(6)
        first, second = (random_future_timelike(rng) for _ in range(2))
        g = linear_involution(first) @ linear_involution(second)
        assert (g @ g.inverse()).distance(Isometry.identity()) < 1e-9
        assert g.power(-2).distance(g.inverse() @ g.inverse()) < 1e-9

    def test_particle_involution(self) -> None:
        p = Point(np.array([1.0, 2.0, 3.0]))
        iota = particle_involution(p, E3)
        assert iota(p) - p == pytest.approx(np.zeros(3))
        assert (p + 2.0 * E3) - iota(p + 2.0 * E3) == pytest.approx(np.zeros(3))
        assert (iota @ iota).distance(AffineIsometry.identity()) < 1e-9

    def test_particle_needs_unit_direction(self) -> None:
        with pytest.raises(DomainError):
            particle_involution(ORIGIN, (0.0, 0.0, 2.0))

    def test_affine_composition(self) -> None:
        g = AffineIsometry(linear_involution(E3), np.array([1.0, 0.0, 0.0]))
        h = AffineIsometry.pure_translation((0.0, 1.0, 0.0))
        point = Point(np.array([0.5, -1.0, 2.0]))
        assert (g @ h)(point) - g(h(point)) == pytest.approx(np.zeros(3))
        assert (g.inverse() @ g).distance(AffineIsometry.identity()) < 1e-12
        assert g.power(3).distance(g) < 1e-12
