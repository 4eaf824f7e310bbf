"""
crookedtiles
~~~~~~~~~~~~

Crooked fundamental domains for affine deformations of one-holed torus
groups, and the tiling of the space of proper deformations.
"""

from typing import Dict, Sequence, Tuple

from .config import Config, load_config
from .deformation import affine_coxeter, AffineCoxeter, alpha_coordinates, Cocycle
from .farey import BASE_TRIPLE, BasicTriple
from .lorentz import ORIGIN, Point
from .surface import (
    CoxeterExtension,
    coxeter_extension,
    FixedPointChoice,
    fixed_point_cycle,
    FuchsianRep,
    rep_from_traces,
)
from .tiling import enumerate_tiles, Realization, realize_direction, TilingAtlas
from .typing import AlphaTriple, Coefficients, FloatArray
from .utilities import (
    ConfigError,
    ConstructionError,
    DegenerateConfigurationError,
    DomainError,
    GeometryError,
    NotTameError,
)

__version__ = "0.1.0+dev"


class DeformationSpace:
    """
    The affine deformations of the one-holed torus group with a given trace
    triple.
    """

    def __init__(
        self,
        traces: Sequence[float],
        choice: FixedPointChoice = FixedPointChoice.PLUS,
    ) -> None:
        """
        Constructor

        :param traces: The traces ``(x, y, z)`` of ``a``, ``b`` and ``ab``.
        :param crookedtiles.surface.FixedPointChoice choice: Which fixed
            point of ``ι0ι1ι2`` is the cusp of the fundamental triangle.
        """
        self.rep: FuchsianRep = rep_from_traces(*traces)
        self.choice = choice
        self.extension: CoxeterExtension = coxeter_extension(self.rep)
        self.n: FloatArray = fixed_point_cycle(self.extension, choice).n
        self._atlases: Dict[int, TilingAtlas] = {}

    @property
    def traces(self) -> Tuple[float, float, float]:
        return self.rep.traces

    def atlas(self, depth: int) -> TilingAtlas:
        """
        The tiles within ``depth`` flips of the base superbasis. Atlases are
        cached per depth.
        """
        if depth not in self._atlases:
            self._atlases[depth] = enumerate_tiles(self.rep, depth, self.choice)
        return self._atlases[depth]

    def crooked_domain(
        self, coefficients: Sequence[Coefficients], center: Point = ORIGIN
    ) -> AffineCoxeter:
        """
        The affine Coxeter group and crooked ideal triangle with vertex
        coefficients ``(u⁺ᵢ, u⁻ᵢ)``.
        """
        return affine_coxeter(self.extension, self.n, coefficients, center)

    def margulis_invariants(
        self, u: Cocycle, triple: BasicTriple = BASE_TRIPLE
    ) -> AlphaTriple:
        return alpha_coordinates(u, triple)

    def realize(self, direction: Sequence[float], depth: int) -> Realization:
        """
        A fundamental domain for a deformation whose Margulis invariants on
        ``(a, b, BA)`` point along ``direction``.

        :raises crookedtiles.utilities.NotTameError: If no tile of the atlas
            of this depth contains the direction.
        """
        return realize_direction(self.atlas(depth), direction)

    def is_tame(self, direction: Sequence[float], depth: int) -> bool:
        return self.atlas(depth).locate(direction) is not None


__all__ = (
    "Config",
    "ConfigError",
    "ConstructionError",
    "DeformationSpace",
    "DegenerateConfigurationError",
    "DomainError",
    "GeometryError",
    "load_config",
    "NotTameError",
)
