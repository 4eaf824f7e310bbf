"""
crookedtiles/utilities
~~~~~~~~~~~~~~~~~~~~~~

Utility functions and the error hierarchy that do not belong in a separate module.
"""

from typing import Optional, Sequence

import numpy as np

from .typing import FloatArray

# Global tolerance used for causal classification, orthogonality checks and
# sign decisions. Individual operations accept an override.
EPSILON = 1e-9

# Tolerance on barycentric coefficients when classifying directions in a tile.
TILE_EPSILON = 1e-8


class GeometryError(Exception):
    pass


class DomainError(GeometryError):
    """Indicates an input outside the domain of an operation.

    This is raised for a non-spacelike director, a null involution axis, an
    elliptic element where a hyperbolic one is required, or nonpositive
    coefficients for an edge quadrilateral.

    """

    pass  # noqa


class DegenerateConfigurationError(GeometryError):
    """Indicates linearly dependent data where independence is required.

    Dependent normals, proportional cusps, singular α systems and
    rank-deficient corner sets all raise this.

    """

    pass  # noqa


class ConstructionError(GeometryError):
    """Indicates that a group or triple could not be built from its inputs,
    for example an inadmissible trace triple or a reducible pair.
    """

    pass  # noqa


class NotTameError(DomainError):
    """Indicates a direction that lies outside every tile of an atlas.

    .. attribute:: depth

       The atlas depth at which the search gave up.

    """

    def __init__(self, message: str, depth: Optional[int] = None) -> None:
        self.depth = depth
        super().__init__(message)


class ConfigError(ValueError):
    """Indicates an invalid configuration file or option value.

    .. attribute:: line

       The offending line number in the configuration file, or None when
       the value did not come from a file.

    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def as_vector(value: Sequence[float]) -> FloatArray:
    vector = np.asarray(value, dtype=float)
    if vector.shape != (3,):
        raise DomainError(f"Expected three components, got shape {vector.shape}")
    return vector


def euclidean_unit(vector: FloatArray) -> FloatArray:
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise DegenerateConfigurationError("Cannot normalize the zero vector")
    return vector / norm


def scale_of(*arrays: FloatArray) -> float:
    """Largest absolute entry of the inputs, floored at one.

    Relative tolerances throughout the package are ``eps * scale_of(...)``.
    """
    largest = max((float(np.max(np.abs(a))) for a in arrays if np.size(a)), default=0.0)
    return max(1.0, largest)


def parse_float_list(text: str, count: Optional[int] = None) -> Sequence[float]:
    # Comma separated values, shared by the config file and the CLI flags.
    try:
        values = [float(piece.strip()) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise ConfigError(f"Expected comma separated numbers, got {text!r}")
    if count is not None and len(values) != count:
        raise ConfigError(f"Expected {count} values, got {len(values)} in {text!r}")
    return values
