"""Optional TOML configuration; command-line flags take precedence."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .admissibility import DEFAULT_PRIMES, parse_p
from .errors import ValidationError


@dataclass
class Config:
    precision: int = 192
    max_unity_order: int | None = None
    p_sweep: tuple = DEFAULT_PRIMES
    jobs: int = 1
    alias_file: str | None = None
    g_limit: int = 5

    @classmethod
    def load(cls, path=None):
        cfg = cls()
        if path is None:
            return cfg
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ValidationError(f"bad config file {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        for k, v in data.items():
            key = k.replace("-", "_")
            if key not in known:
                raise ValidationError(f"unknown config key {k!r}")
            if key == "p_sweep":
                v = tuple(parse_p(x) for x in (v.split(",") if isinstance(v, str) else v))
            setattr(cfg, key, v)
        return cfg


def load_aliases(path=None):
    """Alias table: Newton polygon -> our label -> {label, example}."""
    if path is None:
        text = resources.files("weil_lab").joinpath("data/aliases.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)
