"""
crookedtiles/cli
~~~~~~~~~~~~~~~~

The ``crookedtiles`` command line.

Every command reads an optional configuration file, applies the flags on top
of it, and writes its artifact to ``--out`` (standard output if absent) and
its result file to ``--report``.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from . import __version__
from .config import Config, load_config
from .crooked import analyze_cit, cit_disjointness_check
from .deformation import affine_coxeter, AffineCoxeter, EdgeQuadrilateral
from .farey import enumerate_tree
from .lorentz import ORIGIN
from .render import (
    domain_mesh,
    format_report,
    nielsen_orbit,
    render_nielsen,
    render_tiles,
)
from .surface import coxeter_extension, fixed_point_cycle, rep_from_traces
from .tiling import enumerate_tiles, realize_direction, tiles_disjoint
from .utilities import ConfigError, GeometryError, NotTameError, parse_float_list
from .verification import run_suites, SUITES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _floats(count: int) -> Callable[[str], List[float]]:
    def parse(text: str) -> List[float]:
        try:
            return list(parse_float_list(text, count))
        except ConfigError as error:
            raise argparse.ArgumentTypeError(str(error))

    return parse


def _write_text(path: Optional[Path], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)


def _write_report(config: Config, values: Dict[str, Any], always: bool = False) -> None:
    if config.report is not None:
        _write_text(config.report, format_report(values))
    elif always:
        _write_text(None, format_report(values))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value configuration file")
    common.add_argument("--traces", type=_floats(3), help="trace triple x,y,z")
    common.add_argument("--depth", type=int, help="Farey tree depth")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--out", dest="output", type=Path, help="artifact path")
    common.add_argument("--report", type=Path, help="result file path")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging"
    )
    return common


def _parse_args(argv: Optional[List[str]]) -> argparse.Namespace:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="crookedtiles",
        description=(
            "Crooked fundamental domains and the tiling of proper affine deformations."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(
        "tiles", parents=[common], help="SVG of the tiling in the chart plane"
    )

    nielsen = commands.add_parser(
        "nielsen", parents=[common], help="SVG of the ideal triangle tessellation"
    )
    nielsen.add_argument(
        "--words", dest="nielsen_words", type=int, help="involution word length"
    )

    domain = commands.add_parser(
        "domain", parents=[common], help="OBJ mesh of a crooked domain"
    )
    target = domain.add_mutually_exclusive_group(required=True)
    target.add_argument(
        "--u", type=_floats(6), help="vertex coefficients u+0,u-0,u+1,u-1,u+2,u-2"
    )
    target.add_argument(
        "--alpha", type=_floats(3), help="Margulis invariants of a, b, BA"
    )
    domain.add_argument(
        "--clip-radius", dest="clip_radius", type=float, help="mesh clip radius"
    )

    verify = commands.add_parser(
        "verify", parents=[common], help="run the property suites"
    )
    verify.add_argument(
        "--suite",
        dest="suites",
        action="append",
        choices=sorted(SUITES),
        help="suite to run",
    )
    verify.add_argument("--tolerance", type=float, help="global tolerance")
    verify.add_argument("--residual-tolerance", dest="residual_tolerance", type=float)
    verify.add_argument("--samples", type=int, help="fundamental domain samples")

    commands.add_parser("farey", parents=[common], help="list the superbasis tree")
    return parser.parse_args(argv)


def _resolve_config(args: argparse.Namespace) -> Config:
    config = load_config(args.config) if args.config is not None else Config()
    overrides = {
        name: getattr(args, name, None)
        for name in (
            "depth",
            "seed",
            "output",
            "report",
            "nielsen_words",
            "clip_radius",
            "tolerance",
            "residual_tolerance",
            "samples",
        )
    }
    if args.traces is not None:
        overrides["traces"] = tuple(args.traces)
    return config.replace(**overrides)


def cmd_tiles(config: Config, args: argparse.Namespace) -> int:
    atlas = enumerate_tiles(
        rep_from_traces(*config.traces),
        config.depth,
        config.fixed_point_choice,
        tol=config.tolerance,
    )
    _write_text(config.output, render_tiles(atlas))
    disjointness = tiles_disjoint(atlas, config.lp_margin)
    _write_report(
        config,
        {
            "command": "tiles",
            "traces": config.traces,
            "depth": config.depth,
            "tiles": len(atlas.tiles),
            "boundary_edges": atlas.boundary_edges,
            "convex": atlas.is_convex(config.tolerance),
            "disjoint": disjointness.disjoint,
            "corners": len(atlas.corners),
        },
    )
    return EXIT_OK


def cmd_nielsen(config: Config, args: argparse.Namespace) -> int:
    ext = coxeter_extension(rep_from_traces(*config.traces))
    n = fixed_point_cycle(ext, config.fixed_point_choice, config.tolerance).n
    triangles = nielsen_orbit(ext, n, config.nielsen_words)
    _write_text(config.output, render_nielsen(triangles))
    vertices = np.concatenate(triangles)
    _write_report(
        config,
        {
            "command": "nielsen",
            "traces": config.traces,
            "words": config.nielsen_words,
            "triangles": len(triangles),
            "max_radius": float(np.max(np.linalg.norm(vertices, axis=1))),
        },
    )
    return EXIT_OK


def _coxeter_values(domain: AffineCoxeter, sign: float = 1.0) -> Dict[str, Any]:
    analysis = analyze_cit(domain.cit)
    return {
        "center": sign * analysis.center.coordinates,
        "slab_coefficients": analysis.coefficients,
        "nondegenerate": analysis.nondegenerate,
    }


def cmd_domain(config: Config, args: argparse.Namespace) -> int:
    """Mesh of a crooked domain from vertex coefficients or from a direction
    of Margulis invariants.

    ``--u`` builds the crooked ideal triangle as given, so positive
    coefficients give negative invariants. ``--alpha`` realizes the
    requested signs, reflecting through the center when the tile has
    negative chirality. The report states which convention applies.
    """
    rep = rep_from_traces(*config.traces)
    values: Dict[str, Any] = {"command": "domain", "traces": config.traces}
    if args.u is not None:
        ext = coxeter_extension(rep)
        n = fixed_point_cycle(ext, config.fixed_point_choice, config.tolerance).n
        u = args.u
        pairs = ((u[0], u[1]), (u[2], u[3]), (u[4], u[5]))
        domain = affine_coxeter(ext, n, pairs, ORIGIN)
        halfspaces = domain.halfspaces()
        reflected = False
        values.update(_coxeter_values(domain))
        values.update(
            kind="triangle",
            alpha=domain.alpha(),
            sign_convention="positive u gives negative alpha",
            disjoint=cit_disjointness_check(domain.cit, config.lp_margin),
        )
    else:
        atlas = enumerate_tiles(
            rep, config.depth, config.fixed_point_choice, tol=config.tolerance
        )
        realization = realize_direction(atlas, args.alpha)
        halfspaces = realization.crooked.halfspaces()
        reflected = realization.reflected
        sign = -1.0 if reflected else 1.0
        if isinstance(realization.crooked, AffineCoxeter):
            values.update(_coxeter_values(realization.crooked, sign))
        elif isinstance(realization.crooked, EdgeQuadrilateral):
            values["center"] = realization.crooked.center.coordinates * sign
        values.update(
            kind=realization.kind,
            alpha=realization.alpha,
            tile=realization.tile.index,
            region=realization.region.value,
            chirality=realization.tile.chirality,
            sign_convention="requested alpha by point reflection when reflected",
            reflected=reflected,
            vertex_coefficients=realization.coefficients,
            disjoint=realization.disjoint,
        )
    mesh = domain_mesh(halfspaces, config.clip_radius, reflected)
    values.update(
        faces=len(halfspaces),
        mesh_vertices=len(mesh.vertices),
        mesh_triangles=len(mesh.faces),
    )
    _write_text(config.output, mesh.to_obj())
    _write_report(config, values)
    return EXIT_OK


def cmd_verify(config: Config, args: argparse.Namespace) -> int:
    results = run_suites(config, args.suites)
    values: Dict[str, Any] = {"seed": config.seed, "traces": config.traces}
    for result in results:
        values[result.name] = "pass" if result.passed else "fail"
        values[f"{result.name}.residual"] = result.residual
        if result.detail:
            values[f"{result.name}.detail"] = result.detail
    failed = [result.name for result in results if not result.passed]
    values["failed"] = ",".join(failed) if failed else "none"
    _write_report(config, values, always=True)
    if failed:
        logger.warning("Failed suites: %s", ", ".join(failed))
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_farey(config: Config, args: argparse.Namespace) -> int:
    nodes = enumerate_tree(config.depth)
    lines = ["# index depth parent slot label triple"]
    for node in nodes:
        parent = "-" if node.parent is None else str(node.parent)
        slot = "-" if node.slot is None else str(node.slot)
        lines.append(
            f"{node.index} {node.depth} {parent} {slot} {node.label} {node.triple}"
        )
    _write_text(config.output, "\n".join(lines) + "\n")
    _write_report(
        config, {"command": "farey", "depth": config.depth, "nodes": len(nodes)}
    )
    return EXIT_OK


_COMMANDS = {
    "tiles": cmd_tiles,
    "nielsen": cmd_nielsen,
    "domain": cmd_domain,
    "verify": cmd_verify,
    "farey": cmd_farey,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _resolve_config(args)
        return _COMMANDS[args.command](config, args)
    except NotTameError as error:
        logger.error("Not geometrically tame at depth %s: %s", error.depth, error)
        return EXIT_INVALID_INPUT
    except (GeometryError, ConfigError) as error:
        logger.error("%s", error)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
