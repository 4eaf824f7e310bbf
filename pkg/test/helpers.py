from typing import Dict, List, Tuple

import numpy as np

from crookedtiles.surface import (
    CoxeterExtension,
    coxeter_extension,
    fixed_point_cycle,
    FuchsianRep,
    rep_from_traces,
)
from crookedtiles.typing import FloatArray

FIXTURE_TRACES = ((3.0, 3.0, 3.0), (4.0, 4.0, 4.0))


def generator(seed: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_vectors(rng: np.random.Generator, count: int) -> FloatArray:
    return rng.normal(size=(count, 3))


def random_future_timelike(rng: np.random.Generator) -> FloatArray:
    x, y = rng.normal(size=2)
    return np.array([x, y, np.sqrt(1.0 + x * x + y * y)])


def random_unit_spacelike(rng: np.random.Generator) -> FloatArray:
    angle = rng.uniform(0.0, 2.0 * np.pi)
    z = rng.normal()
    r = np.sqrt(1.0 + z * z)
    return np.array([r * np.cos(angle), r * np.sin(angle), z])


def random_admissible_traces(rng: np.random.Generator) -> Tuple[float, float, float]:
    """Traces ``x, y ∈ (3, 5)`` and z strictly between the roots of
    ``x² + y² + z² = xyz``.
    """
    x, y = rng.uniform(3.0, 5.0, size=2)
    root = np.sqrt((x * y) ** 2 - 4.0 * (x * x + y * y))
    low, high = (x * y - root) / 2.0, (x * y + root) / 2.0
    z = low + (high - low) * rng.uniform(0.1, 0.9)
    return float(x), float(y), float(z)


def parse_obj(
    text: str,
) -> Tuple[List[FloatArray], List[Tuple[int, int, int]], Dict[str, int]]:
    """Vertices, zero-based faces and the face count per object of an OBJ file."""
    vertices: List[FloatArray] = []
    faces: List[Tuple[int, int, int]] = []
    objects: Dict[str, int] = {}
    current = ""
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        kind, *fields = line.split()
        if kind == "v":
            vertices.append(np.array([float(x) for x in fields]))
        elif kind == "o":
            current = fields[0]
            objects.setdefault(current, 0)
        elif kind == "f":
            a, b, c = (int(x) - 1 for x in fields)
            faces.append((a, b, c))
            objects[current] += 1
        else:
            raise AssertionError(f"Unexpected OBJ line {line!r}")
    return vertices, faces, objects


class Fixture:
    """A representation with its extension and the cusp of its fundamental
    triangle.
    """

    def __init__(self, traces: Tuple[float, float, float]) -> None:
        self.traces = traces
        self.rep: FuchsianRep = rep_from_traces(*traces)
        self.ext: CoxeterExtension = coxeter_extension(self.rep)
        self.n: FloatArray = fixed_point_cycle(self.ext).n


MODULAR = Fixture((3.0, 3.0, 3.0))
EQUILATERAL = Fixture((4.0, 4.0, 4.0))
