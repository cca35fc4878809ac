# file: app/config_parser.py
"""
Run-config grammar (one `key = value` per line, `#` starts a comment):

    value   := scalar | list | range
    scalar  := number or bare word (e.g. 0/90/90/0, SSSS, vibration)
    list    := "[" scalar ("," scalar)* "]"
    range   := number ":" number ":" number      (start:stop:step, stop included)

A key given a list or a range is swept; every other key holds one value.
Ratio keys may be spelled with a slash (a/h, a/b, r/a, d/a, d/e).
"""

import logging
import re
from typing import Any, Dict, List, Tuple, Union

from pydantic import ValidationError

from app.models import RunConfig
from pipeline.errors import PlateAnalysisError

logger = logging.getLogger("hygro_xfem")

KEY_ALIASES = {
    "a/h": "a_over_h",
    "a/b": "a_over_b",
    "r/a": "r_over_a",
    "r0/a": "r_over_a",
    "d/a": "d_over_a",
    "d/e": "d_over_e",
    "xc/a": "xc_over_a",
    "yc/b": "yc_over_b",
}

CONFIG_KEYS = tuple(k for k in RunConfig.model_fields if k not in ("sweep", "case_id"))

_LINE_RE = re.compile(r"^\s*([A-Za-z_][\w/]*)\s*=\s*(.*?)\s*$")
_RANGE_RE = re.compile(r"^([^:]+):([^:]+):([^:]+)$")

# digits kept when generating range values, so 0:0.3:0.1 gives 0.3 and not 0.30000000000000004
_RANGE_DIGITS = 12


class ConfigError(ValueError):
    """Invalid run configuration; `line` is 1-based (None when not tied to a line)."""

    def __init__(self, message: str, line: int = None, source: str = "<config>"):
        self.line = line
        self.source = source
        self.reason = message
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _number(text: str, line: int, source: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"'{text}' is not a number", line, source)


def expand_range(text: str, line: int = None, source: str = "<config>") -> List[float]:
    """Inclusive start:stop:step range."""
    match = _RANGE_RE.match(text)
    if not match:
        raise ConfigError(f"malformed range '{text}'", line, source)
    start, stop, step = (_number(part.strip(), line, source) for part in match.groups())
    if step <= 0.0:
        raise ConfigError(f"range step must be positive, got {step:g}", line, source)
    if stop < start:
        raise ConfigError(f"empty sweep range '{text}'", line, source)

    values = []
    k = 0
    slack = 1e-9 * step
    while start + k * step <= stop + slack:
        values.append(round(start + k * step, _RANGE_DIGITS))
        k += 1
    return values


def parse_value(text: str, line: int = None, source: str = "<config>") -> Union[str, List[Any]]:
    """Scalar string, or the list of values of a list / range."""
    if not text:
        raise ConfigError("missing value", line, source)
    if text.startswith("["):
        if not text.endswith("]"):
            raise ConfigError(f"unterminated list '{text}'", line, source)
        items = [item.strip() for item in text[1:-1].split(",")]
        items = [item for item in items if item]
        if not items:
            raise ConfigError("empty sweep range '[]'", line, source)
        return items
    if _RANGE_RE.match(text):
        return expand_range(text, line, source)
    return text


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _error_key(error: Dict[str, Any]) -> str:
    loc = error.get("loc") or ()
    return str(loc[0]) if loc else ""


def _check_environment(config: RunConfig, lines: Dict[str, int], source: str) -> None:
    """Every requested T and C must lie inside the material table."""
    from config.materials import get_material_table

    table = get_material_table(config.material, config.material_file)
    bounds = {"T": table.temperature_range, "C": table.moisture_range}
    for key, (lo, hi) in bounds.items():
        for value in config.sweep.get(key, (getattr(config, key),)):
            value = float(value)
            if not lo <= value <= hi:
                unit = "K" if key == "T" else "%"
                raise ConfigError(
                    f"{key} = {value:g} {unit} outside the {table.name or 'material'} table range [{lo:g}, {hi:g}]",
                    lines.get(key),
                    source,
                )


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """
    Parse config text into a validated RunConfig.

    Raises:
        ConfigError: unknown or repeated key, malformed value, empty sweep
                     range, invalid layup, or an environment outside the
                     material table, with the offending line number
    """
    scalars: Dict[str, Any] = {}
    sweep: Dict[str, Tuple[Any, ...]] = {}
    lines: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        match = _LINE_RE.match(body)
        if not match:
            raise ConfigError(f"expected 'key = value', got '{body}'", lineno, source)

        key = KEY_ALIASES.get(match.group(1), match.group(1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown key '{match.group(1)}'", lineno, source)
        if key in lines:
            raise ConfigError(f"'{key}' already set on line {lines[key]}", lineno, source)
        lines[key] = lineno

        value = parse_value(match.group(2), lineno, source)
        if isinstance(value, list):
            sweep[key] = tuple(value)
            scalars[key] = value[0]
        else:
            scalars[key] = value

    try:
        config = RunConfig(**scalars, sweep=sweep)
    except ValidationError as e:
        first = e.errors()[0]
        key = _error_key(first)
        raise ConfigError(f"{key or 'config'}: {first['msg']}", lines.get(key), source)

    # every swept point must validate on its own
    for key, values in sweep.items():
        for value in values:
            try:
                config.point({key: value}, config.case_id)
            except ValidationError as e:
                raise ConfigError(f"{key} = {value}: {e.errors()[0]['msg']}", lines.get(key), source)

    try:
        _check_environment(config, lines, source)
    except PlateAnalysisError as e:
        raise ConfigError(str(e), lines.get("material") or lines.get("material_file"), source)

    logger.debug(
        f"Parsed {source}: {len(lines)} keys, "
        f"{len(config.plan()) if config.is_sweep else 1} case(s)"
    )
    return config


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read(), source=path)
