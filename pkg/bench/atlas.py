import time

import numpy as np

import crookedtiles
from crookedtiles.tiling import tiles_disjoint

traces = (3.0, 3.0, 3.0)
depth = 6
directions = 50
seed = 0


rng = np.random.Generator(np.random.Philox(seed))
space = crookedtiles.DeformationSpace(traces)

start = time.perf_counter()
atlas = space.atlas(depth)
built = time.perf_counter()
report = tiles_disjoint(atlas)
checked = time.perf_counter()
for _ in range(directions):
    tile = atlas.tiles[int(rng.integers(len(atlas.tiles)))]
    space.realize(rng.dirichlet(np.ones(3)) @ tile.corners, depth)
end = time.perf_counter()

print(f"{len(atlas.tiles)} tiles: {built - start:.4f}s")
print(f"{report.pairs_checked} pairs checked: {checked - built:.4f}s")
print(f"{directions} realizations: {end - checked:.4f}s")
