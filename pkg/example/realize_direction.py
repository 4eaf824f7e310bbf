"""
Builds a crooked fundamental domain for a direction of Margulis invariants,
checks it by sampling, and writes its faces as an OBJ mesh. It is only
intended to demonstrate how to use crookedtiles.
"""

import sys
from pathlib import Path
from typing import Sequence

from crookedtiles import DeformationSpace, NotTameError
from crookedtiles.render import domain_mesh
from crookedtiles.verification import verify_fundamental_domain

DEPTH = 4
CLIP_RADIUS = 8.0


def main() -> None:
    """Run the example."""
    try:
        direction = [float(x) for x in sys.argv[1:4]]
        output = Path(sys.argv[4])
    except (IndexError, ValueError):
        print("Usage: {} <ALPHA_A> <ALPHA_B> <ALPHA_BA> <OUT.obj>".format(sys.argv[0]))
        sys.exit(1)

    try:
        realize(direction, output)
    except NotTameError as error:
        print(f"No tile of depth {error.depth} contains {direction}")
        sys.exit(2)


def realize(direction: Sequence[float], output: Path) -> None:
    """
    Demonstrate crookedtiles:

    0) Set up the modular torus group
    1) Find the tile containing the direction
    2) Build the crooked domain and check it by sampling
    3) Mesh its faces
    """
    space = DeformationSpace((3.0, 3.0, 3.0))
    realization = space.realize(direction, DEPTH)
    print(
        f"Tile {realization.tile.index} ({realization.region.value}): "
        f"{realization.kind} with invariants {realization.alpha}"
    )

    report = verify_fundamental_domain(realization.domain, max_length=3, samples=500)
    print(
        f"{report.violations} of {report.samples} samples mapped back into the domain"
    )

    halfspaces = realization.crooked.halfspaces()
    mesh = domain_mesh(halfspaces, CLIP_RADIUS, realization.reflected)
    output.write_text(mesh.to_obj(), encoding="utf-8")
    print(f"Wrote {len(mesh.faces)} triangles to {output}")


if __name__ == "__main__":
    main()
