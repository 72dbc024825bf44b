"""Experiment configuration: defaults, INI files, and CLI overrides.

Precedence is flag > file > default. Unknown sections or keys in a config
file are hard errors; silently ignored typos in experiment configs are a
classic way to publish the wrong numbers.
"""

import configparser
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .content import ContentParams
from .errors import ParameterError
from .metrics import SystemParams
from .simulate import McConfig

__all__ = ["SweepGrid", "ExperimentConfig", "load_config", "DEFAULTS"]


@dataclass(frozen=True)
class SweepGrid:
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.points < 2:
            raise ParameterError(f"sweep grids need >= 2 points, got {self.points}")
        if self.spacing not in ("linear", "log"):
            raise ParameterError(f"spacing must be linear or log, got {self.spacing!r}")
        if not self.stop > self.start:
            raise ParameterError(f"need stop > start, got [{self.start}, {self.stop}]")
        if self.spacing == "log" and self.start <= 0:
            raise ParameterError("log spacing requires start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


# Section -> key -> (parser, default). trials = 0 means "per-command
# default": sweeps run a light 2000 trials, validate a full 100000.
_FLOAT = float
_INT = int


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ParameterError(f"expected a boolean, got {text!r}")


def _floats(text) -> tuple:
    if isinstance(text, tuple):
        return text
    out = tuple(float(x) for x in str(text).split(",") if x.strip())
    if not out:
        raise ParameterError(f"expected a comma-separated list, got {text!r}")
    return out


def _ints(text) -> tuple:
    if isinstance(text, tuple):
        return text
    out = tuple(int(x) for x in str(text).split(",") if x.strip())
    if not out:
        raise ParameterError(f"expected a comma-separated list, got {text!r}")
    return out


def _choice(*allowed):
    def parse(text):
        t = str(text).strip().lower()
        if t not in allowed:
            raise ParameterError(f"expected one of {allowed}, got {text!r}")
        return t
    return parse


DEFAULTS = {
    "system": {
        "lambda_b": (_FLOAT, 1.0),
        "lambda_e": (_FLOAT, 5.0),
        "lambda_u": (_FLOAT, 100.0),
        "tx_power_dbm": (_FLOAT, 30.0),
        "noise_dbm": (_FLOAT, -174.0),
        "pathloss_beta": (_FLOAT, 4.0),
        "power_split": (_FLOAT, 0.5),
        "cache_user_ratio": (_FLOAT, 0.5),
        "noise": (_bool, False),
    },
    "content": {
        "file_count": (_INT, 100),
        "cache_size": (_INT, 5),
        "zipf_skew": (_FLOAT, 0.8),
    },
    "monte_carlo": {
        "trials": (_INT, 0),
        "seed": (_INT, 0),
        "window_radius_m": (_FLOAT, 30000.0),
        "mode": (_choice("off", "decoupled", "coupled"), "off"),
    },
    "sweep_theta": {
        "start": (_FLOAT, 0.05),
        "stop": (_FLOAT, 0.95),
        "points": (_INT, 19),
        "spacing": (_choice("linear", "log"), "linear"),
        "alphas": (_floats, (0.2, 0.5, 0.8)),
    },
    "sweep_density": {
        "start": (_FLOAT, 0.1),
        "stop": (_FLOAT, 10.0),
        "points": (_INT, 21),
        "spacing": (_choice("linear", "log"), "log"),
        "cache_sizes": (_ints, (5, 10, 20)),
    },
    "sweep_threshold": {
        "start": (_FLOAT, 0.0),
        "stop": (_FLOAT, 4.0),
        "points": (_INT, 41),
        "spacing": (_choice("linear", "log"), "linear"),
        "ratios": (_floats, (0.5, 5.0)),
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    params: SystemParams
    content: ContentParams
    trials: int
    seed: int
    window_radius_m: float
    mc_mode: str
    theta_grid: SweepGrid
    theta_alphas: tuple
    density_grid: SweepGrid
    density_cache_sizes: tuple
    threshold_grid: SweepGrid
    threshold_ratios: tuple

    def mc_config(self, default_trials: int) -> McConfig | None:
        """Monte Carlo settings, or None when MC is switched off."""
        if self.mc_mode == "off":
            return None
        return McConfig(
            trials=self.trials if self.trials > 0 else default_trials,
            seed=self.seed,
            window_radius_m=self.window_radius_m,
            coupling_mode=self.mc_mode,
            include_noise=not self.params.interference_limited,
        )

    def echo_lines(self) -> list[str]:
        """Effective configuration as 'section.key = value' lines for CSV headers."""
        p, c = self.params, self.content
        values = {
            "system.lambda_b": f"{p.lambda_b:g} per km^2",
            "system.lambda_e": f"{p.lambda_e:g} per km^2",
            "system.lambda_u": f"{p.lambda_u:g} per km^2",
            "system.tx_power_dbm": f"{p.tx_power_dbm:g}",
            "system.noise_dbm": f"{p.noise_dbm:g}",
            "system.pathloss_beta": f"{p.pathloss_beta:g}",
            "system.power_split": f"{p.power_split:g}",
            "system.cache_user_ratio": f"{p.cache_user_ratio:g}",
            "system.noise": "on" if not p.interference_limited else "off",
            "content.file_count": str(c.file_count),
            "content.cache_size": str(c.cache_size),
            "content.zipf_skew": f"{c.zipf_skew:g}",
            "monte_carlo.trials": str(self.trials) if self.trials else "auto",
            "monte_carlo.seed": str(self.seed),
            "monte_carlo.window_radius_m": f"{self.window_radius_m:g}",
            "monte_carlo.mode": self.mc_mode,
        }
        return [f"{k} = {v}" for k, v in values.items()]


def _parse_file(path: str) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    if not Path(path).is_file():
        raise ParameterError(f"config file not found: {path}")
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ParameterError(f"malformed config file {path}: {exc}") from exc
    if parser.defaults():
        keys = ", ".join(sorted(parser.defaults()))
        raise ParameterError(f"keys outside any known section: {keys}")
    raw = {}
    for section in parser.sections():
        if section not in DEFAULTS:
            raise ParameterError(f"unknown config section [{section}]")
        for key, value in parser.items(section):
            if key not in DEFAULTS[section]:
                raise ParameterError(f"unknown key {key!r} in section [{section}]")
            raw[(section, key)] = value
    return raw


def load_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Resolve an ExperimentConfig from defaults, an optional INI file, and
    flag overrides given as {(section, key): value}."""
    raw = {}
    if path is not None:
        raw.update(_parse_file(path))
    if overrides:
        for loc, value in overrides.items():
            section, key = loc
            if section not in DEFAULTS or key not in DEFAULTS[section]:
                raise ParameterError(f"unknown override {section}.{key}")
            raw[loc] = value

    def get(section, key):
        parse, default = DEFAULTS[section][key]
        if (section, key) in raw:
            try:
                return parse(raw[(section, key)])
            except (ValueError, TypeError) as exc:
                raise ParameterError(
                    f"bad value for {section}.{key}: {raw[(section, key)]!r}"
                ) from exc
        return default

    noise_on = get("system", "noise")
    params = SystemParams(
        lambda_b=get("system", "lambda_b"),
        lambda_e=get("system", "lambda_e"),
        lambda_u=get("system", "lambda_u"),
        tx_power_dbm=get("system", "tx_power_dbm"),
        noise_dbm=get("system", "noise_dbm"),
        pathloss_beta=get("system", "pathloss_beta"),
        power_split=get("system", "power_split"),
        cache_user_ratio=get("system", "cache_user_ratio"),
        interference_limited=not noise_on,
    )
    content = ContentParams(
        file_count=get("content", "file_count"),
        cache_size=get("content", "cache_size"),
        zipf_skew=get("content", "zipf_skew"),
    )
    trials = get("monte_carlo", "trials")
    if trials < 0:
        raise ParameterError(f"trials must be >= 0, got {trials}")
    window = get("monte_carlo", "window_radius_m")
    if not (window > 0 and math.isfinite(window)):
        raise ParameterError(f"window_radius_m must be positive, got {window}")
    return ExperimentConfig(
        params=params,
        content=content,
        trials=trials,
        seed=get("monte_carlo", "seed"),
        window_radius_m=window,
        mc_mode=get("monte_carlo", "mode"),
        theta_grid=SweepGrid(get("sweep_theta", "start"),
                             get("sweep_theta", "stop"),
                             get("sweep_theta", "points"),
                             get("sweep_theta", "spacing")),
        theta_alphas=get("sweep_theta", "alphas"),
        density_grid=SweepGrid(get("sweep_density", "start"),
                               get("sweep_density", "stop"),
                               get("sweep_density", "points"),
                               get("sweep_density", "spacing")),
        density_cache_sizes=get("sweep_density", "cache_sizes"),
        threshold_grid=SweepGrid(get("sweep_threshold", "start"),
                                 get("sweep_threshold", "stop"),
                                 get("sweep_threshold", "points"),
                                 get("sweep_threshold", "spacing")),
        threshold_ratios=get("sweep_threshold", "ratios"),
    )
