import numpy as np
import pytest

import crookedtiles
from crookedtiles import ConstructionError, DeformationSpace, NotTameError
from crookedtiles.deformation import Cocycle
from crookedtiles.surface import FixedPointChoice


@pytest.fixture(scope="module")
def space() -> DeformationSpace:
    return DeformationSpace((4.0, 4.0, 4.0))


class TestDeformationSpace:
    def test_traces(self, space: DeformationSpace) -> None:
        assert space.traces == pytest.approx((4.0, 4.0, 4.0))
        assert space.choice is FixedPointChoice.PLUS

    def test_inadmissible(self) -> None:
        with pytest.raises(ConstructionError):
            DeformationSpace((1.0, 1.0, 1.0))

    def test_atlas_is_cached(self, space: DeformationSpace) -> None:
        assert space.atlas(1) is space.atlas(1)
        assert len(space.atlas(1).tiles) == 4

    def test_crooked_domain(self, space: DeformationSpace) -> None:
        domain = space.crooked_domain([(1.0, 1.0), (2.0, 0.5), (0.5, 2.0)])
        alpha = space.margulis_invariants(domain.cocycle())
        assert np.array(alpha) == pytest.approx(np.array(domain.alpha()), abs=1e-7)

    def test_coboundary(self, space: DeformationSpace) -> None:
        u = Cocycle.coboundary((space.rep.A, space.rep.B), (1.0, 2.0, 3.0))
        assert space.margulis_invariants(u) == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)

    def test_realize(self, space: DeformationSpace) -> None:
        t = space.atlas(2).tiles[4]
        direction = t.corners.sum(axis=0)
        realization = space.realize(direction, 2)
        assert realization.tile is t
        assert realization.kind == "triangle"

    def test_tameness(self, space: DeformationSpace) -> None:
        assert space.is_tame(space.atlas(2).tiles[0].corners.mean(axis=0), 2)
        assert not space.is_tame((1.0, -1.0, 1.0), 2)
        with pytest.raises(NotTameError):
            space.realize((1.0, -1.0, 1.0), 2)


def test_exports() -> None:
    for name in crookedtiles.__all__:
        assert hasattr(crookedtiles, name)
    assert crookedtiles.__version__
