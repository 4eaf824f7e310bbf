"""
crookedtiles/render
~~~~~~~~~~~~~~~~~~~

Figures, meshes and result files.

Figures are drawn with matplotlib on a bare :class:`~matplotlib.figure.Figure`
and serialized as SVG. The id salt and the metadata are fixed, so the same
input always produces the same bytes.
"""

import io
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import matplotlib
import numpy as np
from matplotlib import cm
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Polygon

from .crooked import CrookedHalfspace, CrookedPlane, mesh_crooked_plane, TriangleMesh
from .farey import primitive_words
from .hyperbolic import klein_coordinates
from .lorentz import Point
from .surface import CoxeterExtension, fundamental_triangle, involution_words
from .tiling import chart_point, primitive_covector, TilingAtlas
from .typing import FloatArray
from .utilities import DomainError, scale_of

logger = logging.getLogger(__name__)

CHART_PROJECTION = (
    "chart plane: barycentric projection d -> d / (d1 + d2 + d3) of the Margulis "
    "invariants d = (alpha(a), alpha(b), alpha(BA))"
)
KLEIN_PROJECTION = "Klein model: (x, y, z) -> (x / z, y / z)"

_SVG_STYLE = {
    "svg.hashsalt": "crookedtiles",
    "svg.fonttype": "none",
    "path.simplify": False,
}

_BARYCENTRIC_EDGES = ((0, 1), (1, 2), (2, 0))


def _figure() -> Tuple[Figure, Any]:
    fig = Figure(figsize=(6.0, 6.0))
    ax = fig.add_axes([0.02, 0.02, 0.96, 0.96])
    ax.set_aspect("equal")
    ax.set_axis_off()
    return fig, ax


def _to_svg(fig: Figure, title: str, description: str) -> str:
    buffer = io.StringIO()
    metadata = {
        "Title": title,
        "Description": description,
        "Creator": "crookedtiles",
        "Date": None,
    }
    with matplotlib.rc_context(_SVG_STYLE):
        fig.savefig(buffer, format="svg", metadata=metadata)
    return buffer.getvalue()


def chart_line(covector: Sequence[float], tol: float = 1e-12) -> Optional[FloatArray]:
    """The segment where the plane ``covector · d = 0`` meets the chart
    triangle, or None when it misses the triangle.
    """
    c = np.asarray(covector, dtype=float)
    if not np.any(c):
        raise DomainError("The zero covector defines no line")
    c = c / np.max(np.abs(c))
    identity = np.eye(3)
    points: List[FloatArray] = []
    for i, j in _BARYCENTRIC_EDGES:
        if abs(c[i]) <= tol and abs(c[j]) <= tol:
            candidates = [identity[i], identity[j]]
        elif c[i] * c[j] <= 0.0:
            t = c[j] / (c[j] - c[i])
            candidates = [t * identity[i] + (1.0 - t) * identity[j]]
        else:
            continue
        for weights in candidates:
            point = chart_point(weights)
            if not any(np.allclose(point, known, atol=1e-9) for known in points):
                points.append(point)
    if len(points) < 2:
        return None
    return np.array(points[:2])


def render_tiles(atlas: TilingAtlas, line_depth: Optional[int] = None) -> str:
    """The tiles of an atlas in the chart plane, with the lines on which the
    Margulis invariant of a primitive word vanishes.
    """
    line_depth = atlas.depth if line_depth is None else line_depth
    if line_depth > atlas.depth:
        raise DomainError(
            f"Lines need depth {line_depth} but the atlas has depth {atlas.depth}"
        )
    fig, ax = _figure()

    simplex = np.array([chart_point(row) for row in np.eye(3)])
    ax.add_patch(
        Polygon(simplex, closed=True, fill=False, edgecolor="0.6", linewidth=0.5)
    )

    lines = 0
    for _, word in primitive_words(line_depth):
        segment = chart_line(primitive_covector(atlas, word))
        if segment is None:
            continue
        ax.plot(
            segment[:, 0], segment[:, 1], color="0.45", linewidth=0.4, linestyle="--"
        )
        lines += 1

    for t in atlas.tiles:
        corners = np.array([chart_point(c) for c in t.corners])
        shade = cm.viridis(t.node.depth / max(1, atlas.depth))
        ax.add_patch(
            Polygon(
                corners,
                closed=True,
                facecolor=shade,
                alpha=0.7,
                edgecolor="black",
                linewidth=0.5,
            )
        )

    outline = atlas.chart_polygon()
    ax.add_patch(
        Polygon(outline, closed=True, fill=False, edgecolor="black", linewidth=1.2)
    )
    ax.set_xlim(-0.05, 1.05)
    ax.set_ylim(-0.05, 0.92)
    logger.debug("Drew %d tiles and %d invariant lines", len(atlas.tiles), lines)
    return _to_svg(fig, f"Tiles to depth {atlas.depth}", CHART_PROJECTION)


def nielsen_orbit(
    ext: CoxeterExtension, n: FloatArray, length: int
) -> List[FloatArray]:
    """Klein coordinates of the images of the fundamental triangle under
    all involution words of at most ``length`` letters.

    Images are deduplicated by the matrix of the word.
    """
    if length < 0:
        raise DomainError(f"Word length must be nonnegative, got {length}")
    cusps = np.array(fundamental_triangle(ext, n).cusps)
    seen = set()
    triangles = []
    for size in range(length + 1):
        for word in involution_words(size):
            g = ext.evaluate(word)
            key = tuple(np.round(g.matrix / scale_of(g.matrix), 9).ravel())
            if key in seen:
                continue
            seen.add(key)
            triangles.append(klein_coordinates(g(cusps)))
    return triangles


def render_nielsen(triangles: Sequence[FloatArray]) -> str:
    fig, ax = _figure()
    disk = Circle((0.0, 0.0), 1.0, fill=False, edgecolor="black", linewidth=0.8)
    ax.add_patch(disk)
    for index, corners in enumerate(triangles):
        color = "0.75" if index else "tab:orange"
        patch = Polygon(
            corners, closed=True, facecolor=color, edgecolor="black", linewidth=0.3
        )
        ax.add_patch(patch)
        patch.set_clip_path(disk)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    title = f"Orbit of the fundamental triangle ({len(triangles)} triangles)"
    return _to_svg(fig, title, KLEIN_PROJECTION)


def domain_mesh(
    halfspaces: Sequence[CrookedHalfspace],
    clip_radius: float,
    reflected: bool = False,
    segments: int = 12,
) -> TriangleMesh:
    """One mesh for the crooked planes bounding a domain, grouped per face.

    A reflected domain is meshed from its crooked preimage and mapped by
    ``x ↦ −x``.
    """
    mesh = TriangleMesh()
    for index, h in enumerate(halfspaces):
        face = mesh_crooked_plane(CrookedPlane(h), clip_radius, segments)
        mesh.extend(face, f"face{index}/")
    if reflected:
        mesh.vertices = [-v for v in mesh.vertices]
    return mesh


def _format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    if isinstance(value, Point):
        return _format_value(value.coordinates)
    if isinstance(value, (list, tuple, np.ndarray)):
        items = np.asarray(value, dtype=object).ravel()
        return ",".join(_format_value(item) for item in items)
    return str(value)


def format_report(values: Mapping[str, Any]) -> str:
    """``key = value`` lines with sorted keys; arrays are comma separated."""
    return "".join(f"{key} = {_format_value(values[key])}\n" for key in sorted(values))


def parse_report(text: str) -> Dict[str, str]:
    report = {}
    for line in text.splitlines():
        key, _, value = line.partition(" = ")
        report[key] = value
    return report
