"""Run configuration and parameter-file loading for the command line."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .operators import ModuleParams, as_rational

DEFAULT_GRID = ((2, 0, 1), (2, 1, 0), (3, 0, 1), (3, 0, -2), (4, 0, 1))
ALL_SUITES = ("serre", "commlemmas", "crosscheck", "heisenberg", "pn", "intertwine", "semismall", "dims", "reps")


class ConfigError(ValueError):
    """Invalid configuration; the command line maps it to exit code 2."""


@dataclass(frozen=True)
class Geometry:
    genus: int
    d: int
    degL: tuple = ()

    def params(self, n: int) -> ModuleParams:
        degL = self.degL or (0,) * n
        if len(degL) != n:
            raise ConfigError(f"degL needs {n} entries, got {len(degL)}")
        return ModuleParams.from_geometry(n, self.genus, self.d, degL)


@dataclass(frozen=True)
class RunConfig:
    n: int
    c: tuple | None = None
    geometry: Geometry | None = None
    max_degree: int = 4
    pmax: int = 2
    suites: tuple = ALL_SUITES
    fmt: str = "json"
    workers: int = 1
    seed: int = 0
    fold_k: int = 2
    cycles: int = 1
    rep_count: int = 200
    rep_size: int = 6
    literal: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n!r}")
        if self.max_degree < 0:
            raise ConfigError("max degree must be nonnegative")
        if self.pmax < 1:
            raise ConfigError("pmax must be positive")
        if not self.suites:
            raise ConfigError("at least one suite is required")
        unknown = sorted(set(self.suites) - set(ALL_SUITES))
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")
        if self.c is not None and self.geometry is not None:
            raise ConfigError("give either raw constants c or geometry, not both")
        if self.c is not None and len(self.c) != self.n:
            raise ConfigError(f"need {self.n} constants c_i, got {len(self.c)}")
        if self.fmt not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        if self.fold_k < 2 or self.cycles < 1:
            raise ConfigError("fold_k must be >= 2 and cycles >= 1")

    def params(self) -> ModuleParams:
        if self.c is not None:
            return ModuleParams(self.n, self.c)
        return (self.geometry or Geometry(0, 1)).params(self.n)

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        out.pop("fmt")
        out.pop("workers")
        out["c"] = None if self.c is None else [str(x) for x in self.c]
        out["suites"] = list(self.suites)
        out["params"] = self.params().to_json()
        return out


def load_params_file(path: str) -> dict:
    """Parse ``{"c": [...]}`` or ``{"genus": g, "d": d, "degL": [...]}`` into RunConfig keyword arguments."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read params file {path}: {exc}") from exc
    return params_from_mapping(data)


def params_from_mapping(data: dict) -> dict:
    if not isinstance(data, dict):
        raise ConfigError("params must be a JSON object")
    has_c = "c" in data
    has_geo = any(k in data for k in ("genus", "d", "degL"))
    if has_c and has_geo:
        raise ConfigError("params give both c and geometry")
    out: dict = {}
    if "n" in data:
        out["n"] = data["n"]
    if has_c:
        try:
            out["c"] = tuple(as_rational(x) for x in data["c"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad constant in c: {exc}") from exc
        out.setdefault("n", len(out["c"]))
    elif has_geo:
        if "genus" not in data or "d" not in data:
            raise ConfigError("geometry needs both genus and d")
        out["geometry"] = Geometry(int(data["genus"]), int(data["d"]), tuple(int(x) for x in data.get("degL", ())))
        if "degL" in data:
            out.setdefault("n", len(data["degL"]))
    return out
