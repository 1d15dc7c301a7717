"""Experiment configuration: INI-style ``key = value`` files with sections.

Example::

    [bath]
    T = 5
    alpha = 0.5
    gamma0 = 0.1
    omega_c = 100

    [geometry]
    regime = localized
    kr = 1.1

    [time]
    start = 0
    stop = 10
    num = 200

    [state]
    initial = equal-superposition

    [monte_carlo]
    seed = 7
    n_samples = 100000

    [scan]
    axis = t
    quantities = concurrence, purity
"""
from __future__ import annotations

import configparser
import re
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .bath import BathParams
from .dynamics import QubitGeometry, Regime

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "validate_config", "SCAN_QUANTITIES"]

SCAN_QUANTITIES = ("concurrence", "fidelity", "weights", "purity", "gamma", "min_eigenvalue")
SCAN_AXES = ("t", "T", "alpha")


class ConfigError(ValueError):
    """One or more configuration problems; ``errors`` holds one line per problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


@dataclass
class ExperimentConfig:
    regime: str = "localized"
    T: float = 5.0
    alpha: float = 0.0
    a: float = 0.0
    gamma0: float = 0.1
    omega_c: float = 100.0
    # separation as dimensionless k r_ab at the cutoff; r_ab (time units) wins if set
    kr: Optional[float] = None
    r_ab: Optional[float] = None
    origin: float = 0.0
    times: tuple = tuple(np.linspace(0.0, 10.0, 200))
    initial: str = "equal-superposition"
    bell: int = 2
    seed: int = 0
    n_samples: int = 100_000
    n_bins: int = 100
    workers: int = 1
    t: float = 10.0
    scan_axis: str = "t"
    scan_values: tuple = ()
    quantities: tuple = ("concurrence",)
    out: str = "out"

    @property
    def bath(self) -> BathParams:
        return BathParams(T=self.T, alpha=self.alpha, a=self.a,
                          gamma0=self.gamma0, omega_c=self.omega_c)

    @property
    def geometry(self) -> QubitGeometry:
        regime = Regime(self.regime)
        if self.r_ab is not None:
            return QubitGeometry.pair(self.r_ab, regime, self.origin)
        kr = self.kr
        if kr is None:
            kr = 1.1 if regime is Regime.LOCALIZED else 0.05
        return QubitGeometry((self.origin, self.origin + kr / self.omega_c), regime)

    def initial_state(self) -> np.ndarray:
        from .states import bell_state, initial_equal_superposition, projector

        sel = self.initial
        if sel == "equal-superposition":
            return initial_equal_superposition()
        if sel.startswith("bell-"):
            return projector(bell_state(int(sel[5:])))
        if sel.startswith("file:"):
            rho = np.load(sel[5:])
            return np.asarray(rho, dtype=complex)
        raise ConfigError([f"state.initial: unknown selector {sel!r}"])

    def with_overrides(self, **kw) -> "ExperimentConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        cfg = replace(self, **kw)
        errors = check(cfg)
        if errors:
            raise ConfigError(errors)
        return cfg

    def as_metadata(self) -> dict:
        meta = asdict(self)
        meta["times"] = [float(x) for x in self.times]
        meta["scan_values"] = [float(x) for x in self.scan_values]
        meta["quantities"] = list(self.quantities)
        g = self.geometry
        meta["positions"] = list(g.positions)
        return meta


# section -> key -> (attribute, parser)
def _floats(text):
    return tuple(float(x) for x in re.split(r"[,\s]+", text.strip()) if x)


def _words(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


_SCHEMA = {
    "bath": {"T": ("T", float), "alpha": ("alpha", float), "a": ("a", float),
             "gamma0": ("gamma0", float), "omega_c": ("omega_c", float)},
    "geometry": {"regime": ("regime", str), "kr": ("kr", float), "r_ab": ("r_ab", float),
                 "origin": ("origin", float)},
    "time": {"start": (None, float), "stop": (None, float), "num": (None, int),
             "values": ("times", _floats), "t": ("t", float)},
    "state": {"initial": ("initial", str), "bell": ("bell", int)},
    "monte_carlo": {"seed": ("seed", int), "n_samples": ("n_samples", int),
                    "n_bins": ("n_bins", int), "workers": ("workers", int)},
    "scan": {"axis": ("scan_axis", str), "values": ("scan_values", _floats),
             "quantities": ("quantities", _words)},
    "output": {"out": ("out", str)},
}


def _line_numbers(text):
    """Map ``(section, key)`` to 1-based line numbers."""
    lines = {}
    section = None
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip()
            lines[(section, None)] = n
        elif section and "=" in s and not s.startswith(("#", ";")):
            lines[(section, s.split("=", 1)[0].strip())] = n
    return lines


def check(cfg: ExperimentConfig) -> list:
    """Constraint violations of an assembled configuration."""
    errors = []
    try:
        Regime(cfg.regime)
    except ValueError:
        errors.append(f"geometry.regime: must be one of localized, collective (got {cfg.regime!r})")
    for name in ("T", "alpha", "a", "gamma0", "omega_c"):
        try:
            BathParams(**{name: getattr(cfg, name)})
        except (ValueError, TypeError) as exc:
            errors.append(f"bath.{name}: {exc}")
    times = np.asarray(cfg.times, dtype=float)
    if times.size and np.any(times < 0):
        errors.append("time: time points must be non-negative")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        dup = times[1:][np.diff(times) <= 0]
        errors.append(f"time: grid must be strictly increasing (offending value {float(dup[0])!r})")
    if cfg.t < 0:
        errors.append("time.t: must be non-negative")
    if cfg.scan_axis not in SCAN_AXES:
        errors.append(f"scan.axis: must be one of {', '.join(SCAN_AXES)} (got {cfg.scan_axis!r})")
    sv = np.asarray(cfg.scan_values, dtype=float)
    if sv.size > 1 and np.any(np.diff(sv) <= 0):
        errors.append("scan.values: grid must be strictly increasing")
    for q in cfg.quantities:
        if q not in SCAN_QUANTITIES:
            errors.append(f"scan.quantities: unknown quantity {q!r}")
    if not (cfg.initial in ("equal-superposition",) or cfg.initial.startswith(("bell-", "file:"))):
        errors.append(f"state.initial: unknown selector {cfg.initial!r}")
    if cfg.bell not in (1, 2, 3, 4):
        errors.append("state.bell: must be 1..4")
    if cfg.n_samples < 1:
        errors.append("monte_carlo.n_samples: must be positive")
    if cfg.n_bins < 1:
        errors.append("monte_carlo.n_bins: must be positive")
    if cfg.workers < 1:
        errors.append("monte_carlo.workers: must be positive")
    if cfg.r_ab is None and cfg.kr is not None and cfg.kr < 0:
        errors.append("geometry.kr: must be non-negative")
    return errors


def _parse(text, source="<config>"):
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    errors = []
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError([f"{source}: {exc}"]) from None
    lines = _line_numbers(text)
    values = {}
    grid = {}
    for section in parser.sections():
        where = f"{source}:{lines.get((section, None), '?')}"
        if section not in _SCHEMA:
            errors.append(f"{where}: unknown section [{section}]")
            continue
        for key, raw in parser.items(section):
            where = f"{source}:{lines.get((section, key), '?')}"
            if key not in _SCHEMA[section]:
                errors.append(f"{where}: unknown key {section}.{key}")
                continue
            attr, conv = _SCHEMA[section][key]
            try:
                val = conv(raw)
            except ValueError:
                errors.append(f"{where}: {section}.{key} = {raw!r} is not a valid {getattr(conv, '__name__', 'value')}")
                continue
            if attr is None:
                grid[key] = (val, where)
            else:
                values[attr] = (val, where)
    if grid:
        start = grid.get("start", (0.0, None))[0]
        stop = grid.get("stop", (10.0, None))[0]
        num = grid.get("num", (200, None))[0]
        if num < 0:
            errors.append(f"{grid['num'][1]}: time.num must be >= 0")
        else:
            values.setdefault("times", (tuple(np.linspace(start, stop, num)), None))
    return values, errors


def load_config(path=None, text=None, **overrides) -> ExperimentConfig:
    """Build a configuration from a file (or text) and keyword overrides.

    Raises :class:`ConfigError` listing every problem found.
    """
    values, errors = {}, []
    source = "<config>"
    if path is not None:
        source = str(path)
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError([f"{source}: {exc.strerror}"]) from None
    if text is not None:
        values, errors = _parse(text, source)
    kw = {k: v for k, (v, _) in values.items()}
    cfg = ExperimentConfig(**kw)
    # report constraint violations against the line that set the field
    for msg in check(cfg):
        prefix = msg.split(":", 1)[0]
        sec, _, key = prefix.partition(".")
        attr = _SCHEMA.get(sec, {}).get(key, (None,))[0] if key else None
        where = values.get(attr, (None, None))[1] if attr else None
        if where is None and sec == "time":
            where = values.get("times", (None, None))[1]
        errors.append(f"{where}: {msg}" if where else msg)
    if errors:
        raise ConfigError(errors)
    return cfg.with_overrides(**overrides) if overrides else cfg


def validate_config(path) -> list:
    """Every violated constraint in a config file, or an empty list."""
    try:
        load_config(path)
    except ConfigError as exc:
        return exc.errors
    return []
