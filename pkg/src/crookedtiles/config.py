"""
crookedtiles/config
~~~~~~~~~~~~~~~~~~~

Run configuration, read from a line oriented ``key = value`` file.
"""

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

from .surface import FixedPointChoice
from .utilities import ConfigError, parse_float_list


@dataclass(frozen=True)
class Config:
    traces: Tuple[float, float, float] = (3.0, 3.0, 3.0)
    depth: int = 4
    seed: int = 0
    tolerance: float = 1e-9
    residual_tolerance: float = 1e-7
    lp_margin: float = 1e-9
    clip_radius: float = 10.0
    samples: int = 2000
    word_length: int = 4
    nielsen_words: int = 6
    fixed_point_choice: FixedPointChoice = FixedPointChoice.PLUS
    output: Optional[Path] = None
    report: Optional[Path] = None

    def __post_init__(self) -> None:
        if len(self.traces) != 3:
            raise ConfigError(f"traces needs three values, got {len(self.traces)}")
        if self.depth < 0:
            raise ConfigError(f"depth must be nonnegative, got {self.depth}")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        for name in ("tolerance", "residual_tolerance", "lp_margin", "clip_radius"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.samples <= 0:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if self.word_length < 1:
            raise ConfigError(f"word_length must be at least 1, got {self.word_length}")
        if self.nielsen_words < 0:
            raise ConfigError(
                f"nielsen_words must be nonnegative, got {self.nielsen_words}"
            )

    def replace(self, **overrides: Any) -> "Config":
        """A validated copy; None values leave a field unchanged."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        unknown = set(changes) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ConfigError(f"Unknown options {sorted(unknown)}")
        return dataclasses.replace(self, **changes)


def _traces(value: str) -> Tuple[float, ...]:
    return tuple(parse_float_list(value, 3))


def _integer(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"Expected an integer, got {value!r}")


def _real(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"Expected a number, got {value!r}")


def _choice(value: str) -> FixedPointChoice:
    try:
        return FixedPointChoice(value.lower())
    except ValueError:
        raise ConfigError(f"fixed_point_choice must be plus or minus, got {value!r}")


def _path(value: str) -> Optional[Path]:
    return Path(value) if value else None


_PARSERS: Dict[str, Callable[[str], Any]] = {
    "traces": _traces,
    "depth": _integer,
    "seed": _integer,
    "tolerance": _real,
    "residual_tolerance": _real,
    "lp_margin": _real,
    "clip_radius": _real,
    "samples": _integer,
    "word_length": _integer,
    "nielsen_words": _integer,
    "fixed_point_choice": _choice,
    "output": _path,
    "report": _path,
}


def parse_config(text: str) -> Config:
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, separator, value = (piece.strip() for piece in line.partition("="))
        if not separator:
            raise ConfigError(f"Expected 'key = value', got {raw.strip()!r}", number)
        if key not in _PARSERS:
            raise ConfigError(f"Unknown key {key!r}", number)
        if key in values:
            raise ConfigError(f"Duplicate key {key!r}", number)
        try:
            values[key] = _PARSERS[key](value)
        except ConfigError as error:
            raise ConfigError(str(error), number)
    return Config(**values)


def load_config(path: Union[str, Path]) -> Config:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(f"Cannot read {path}: {error.strerror}")
    return parse_config(text)
