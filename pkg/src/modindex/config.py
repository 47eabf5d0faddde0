"""Extraction settings and the plain ``key=value`` config file reader."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import UsageError

SELF_DEPENDENCY_MODES = ("textual-self-reference", "always")


@dataclass(frozen=True)
class ExtractionConfig:
    include_globs: tuple[str, ...] = ("**/*.java",)
    exclude_globs: tuple[str, ...] = ()
    count_constructors_as_functions: bool = True
    fold_nested_classes: bool = True
    self_dependency_mode: str = "textual-self-reference"

    def __post_init__(self):
        if self.self_dependency_mode not in SELF_DEPENDENCY_MODES:
            raise UsageError(
                f"self_dependency_mode must be one of {', '.join(SELF_DEPENDENCY_MODES)}, "
                f"got {self.self_dependency_mode!r}"
            )
        for pattern in (*self.include_globs, *self.exclude_globs):
            if not isinstance(pattern, str) or not pattern.strip():
                raise UsageError(f"malformed glob pattern: {pattern!r}")


_BOOLEANS = {"true": True, "yes": True, "on": True, "1": True,
             "false": False, "no": False, "off": False, "0": False}


def _parse_value(field: dataclasses.Field, raw: str, where: str):
    if field.type in ("bool", bool):
        try:
            return _BOOLEANS[raw.lower()]
        except KeyError:
            raise UsageError(f"{where}: expected a boolean for {field.name}, got {raw!r}") from None
    if field.name.endswith("_globs"):
        return tuple(p.strip() for p in raw.split(",") if p.strip())
    return raw


def load_config(path: str | Path, base: ExtractionConfig | None = None) -> ExtractionConfig:
    """Read a ``key=value`` file whose keys mirror :class:`ExtractionConfig`.

    Blank lines and ``#`` comments are ignored. Glob lists are comma separated.
    Dashes in keys are accepted in place of underscores.
    """
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"config file not found: {path}")
    fields = {f.name: f for f in dataclasses.fields(ExtractionConfig)}
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in fields:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _parse_value(fields[key], raw, f"{path}:{lineno}")
    return dataclasses.replace(base or ExtractionConfig(), **values)
