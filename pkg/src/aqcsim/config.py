"""Flat key-value run configuration.

Format: one `key = value` per line, `#` comments, lists comma-separated.
The sampler is written like a call: uniform(3), gaussian(1), grid(11, 3).
Unknown keys are rejected so silent typos cannot change a run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ensemble import EnsembleConfig, SamplerSpec
from .metrics import Settings

_SAMPLER_RE = re.compile(r"^([a-z]+)\s*\(([^)]*)\)$")

_SETTING_KEYS = (
    "ode_tol",
    "gap_grid",
    "refine_tol",
    "overlap_grid",
    "deg_tol",
    "diag_grid",
    "norm_ceiling",
    "drift_tol",
)
_KNOWN_KEYS = ("n", "times", "samples", "sampler", "seed", "workers", "out") + _SETTING_KEYS
_REQUIRED_KEYS = ("n", "times", "sampler")

_INT_SETTINGS = {"gap_grid", "overlap_grid", "diag_grid"}


class ConfigError(ValueError):
    def __init__(self, line: int, key: str, message: str):
        super().__init__(f"line {line}: {key}: {message}" if key else f"line {line}: {message}")
        self.line = line
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    ensemble: EnsembleConfig
    out: str = "records.csv"
    workers: int = 1


def _parse_sampler(raw: str, seed: int, line: int) -> SamplerSpec:
    m = _SAMPLER_RE.match(raw.strip())
    if not m:
        raise ConfigError(line, "sampler", f"expected kind(args), got {raw!r}")
    kind, arglist = m.group(1), m.group(2)
    try:
        args = [float(a) for a in arglist.split(",")] if arglist.strip() else []
    except ValueError:
        raise ConfigError(line, "sampler", f"non-numeric argument in {raw!r}") from None
    try:
        if kind == "uniform":
            if len(args) != 1:
                raise ValueError("uniform takes one argument: half_width")
            return SamplerSpec("uniform", seed=seed, half_width=args[0])
        if kind == "gaussian":
            if len(args) != 1:
                raise ValueError("gaussian takes one argument: sigma")
            return SamplerSpec("gaussian", seed=seed, sigma=args[0])
        if kind == "grid":
            if len(args) != 2:
                raise ValueError("grid takes two arguments: points_per_axis, half_width")
            k = int(args[0])
            if k != args[0]:
                raise ValueError("points_per_axis must be an integer")
            return SamplerSpec("grid", seed=seed, points_per_axis=k, half_width=args[1])
        raise ValueError(f"unknown sampler kind {kind!r}")
    except ValueError as exc:
        raise ConfigError(line, "sampler", str(exc)) from None


def parse_config(text: str) -> RunConfig:
    """Parse a configuration document; diagnostics carry line and key."""
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(lineno, "", f"expected key = value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(lineno, key, "unknown key")
        if key in raw:
            raise ConfigError(lineno, key, f"duplicate (first set on line {raw[key][1]})")
        raw[key] = (value, lineno)

    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError(0, key, "required key missing")

    def get_int(key, default):
        if key not in raw:
            return default
        value, line = raw[key]
        try:
            return int(value)
        except ValueError:
            raise ConfigError(line, key, f"expected an integer, got {value!r}") from None

    def get_float(key, default):
        if key not in raw:
            return default
        value, line = raw[key]
        try:
            return float(value)
        except ValueError:
            raise ConfigError(line, key, f"expected a number, got {value!r}") from None

    n = get_int("n", 0)
    if not 1 <= n <= 12:
        raise ConfigError(raw["n"][1], "n", f"qubit count must be in [1, 12], got {n}")
    times_raw, times_line = raw["times"]
    try:
        times = tuple(float(t) for t in times_raw.split(","))
    except ValueError:
        raise ConfigError(times_line, "times", f"expected comma-separated numbers, got {times_raw!r}") from None

    seed = get_int("seed", 0)
    sampler = _parse_sampler(raw["sampler"][0], seed, raw["sampler"][1])
    samples = get_int("samples", 1000)
    workers = get_int("workers", 1)
    out = raw["out"][0] if "out" in raw else "records.csv"

    defaults = Settings()
    kwargs = {}
    for key in _SETTING_KEYS:
        if key in _INT_SETTINGS:
            kwargs[key] = get_int(key, getattr(defaults, key))
        else:
            kwargs[key] = get_float(key, getattr(defaults, key))

    # range validation with the offending key in the diagnostic
    for key, value in kwargs.items():
        line = raw[key][1] if key in raw else 0
        if key in _INT_SETTINGS:
            if value < 2 or (key == "gap_grid" and value < 3):
                raise ConfigError(line, key, f"grid size too small: {value}")
        elif value <= 0.0:
            raise ConfigError(line, key, f"must be positive, got {value}")
    if workers < 1:
        raise ConfigError(raw["workers"][1], "workers", "must be at least 1")

    try:
        ensemble = EnsembleConfig(
            n=n,
            times=times,
            sample_count=samples,
            sampler=sampler,
            settings=Settings(**kwargs),
        )
    except ValueError as exc:
        raise ConfigError(0, "", str(exc)) from None
    return RunConfig(ensemble=ensemble, out=out, workers=workers)


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
