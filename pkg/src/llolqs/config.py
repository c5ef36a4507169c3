"""Run configuration: a flat key=value text format with a strict schema.

Example::

    # certified run at the reference constants
    d = 2
    T = 50
    lambda = 300
    mu = 10
    learner = vbftrl
    reality = rank-one-random
    seed = 3
    out_dir = out/run3

Lines are ``key = value``; ``#`` starts a comment; blank lines are ignored.
Unknown keys are hard errors so tolerance names cannot silently drift.  Every
key can be overridden by an environment variable ``LLOLQS_<KEY>`` (key
uppercased), and list-valued keys take comma-separated entries.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .ellipsoid import SolverConfig
from .game import LEARNERS, REALITY_KINDS

log = logging.getLogger(__name__)

ENV_PREFIX = "LLOLQS_"

DESK_SCALE_D = 4
DESK_SCALE_T = 200


class ConfigError(ValueError):
    pass


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _parse_int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip()]


def _parse_str_list(raw: str) -> list[str]:
    return [tok.strip() for tok in raw.split(",") if tok.strip()]


@dataclass
class RunConfig:
    """Everything a run or sweep needs; defaults are the reference constants."""

    d: int = 2
    T: int = 50
    lam: float = 300.0
    mu: float = 10.0
    learner: str = "vbftrl"
    reality: str = "rank-one-random"
    replay_path: str = ""
    diag_lo: float = 0.1
    diag_hi: float = 1.0
    seed: int = 0
    # solver
    max_iters: int = 0          # 0 = auto
    eps_vol: float = 1e-8
    tol_psd_cut: float = 0.0    # 0 = auto
    radius_tol: float = 1e-7
    stall_window: int = 0       # 0 = auto
    stall_tol: float = 1e-9
    solver_value_tol: float = 1e-6
    # output
    out_dir: str = "out"
    record_timings: bool = False
    plots: bool = True
    allow_large: bool = False
    workers: int = 0            # 0 = available cores
    # sweep grids
    d_list: list[int] = field(default_factory=lambda: [2])
    T_list: list[int] = field(default_factory=lambda: [25, 50])
    seeds: list[int] = field(default_factory=lambda: [0, 1])
    learners: list[str] = field(default_factory=lambda: ["vbftrl"])
    realities: list[str] = field(default_factory=lambda: ["rank-one-random"])

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            max_iters=self.max_iters or None,
            eps_vol=self.eps_vol,
            tol_psd_cut=self.tol_psd_cut or None,
            radius_tol=self.radius_tol,
            stall_window=self.stall_window or None,
            stall_tol=self.stall_tol,
        )

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            out["lambda" if f.name == "lam" else f.name] = getattr(self, f.name)
        return out


_KEY_TO_FIELD = {
    "d": ("d", int),
    "T": ("T", int),
    "lambda": ("lam", float),
    "mu": ("mu", float),
    "learner": ("learner", str),
    "reality": ("reality", str),
    "replay_path": ("replay_path", str),
    "diag_lo": ("diag_lo", float),
    "diag_hi": ("diag_hi", float),
    "seed": ("seed", int),
    "max_iters": ("max_iters", int),
    "eps_vol": ("eps_vol", float),
    "tol_psd_cut": ("tol_psd_cut", float),
    "radius_tol": ("radius_tol", float),
    "stall_window": ("stall_window", int),
    "stall_tol": ("stall_tol", float),
    "solver_value_tol": ("solver_value_tol", float),
    "out_dir": ("out_dir", str),
    "record_timings": ("record_timings", _parse_bool),
    "plots": ("plots", _parse_bool),
    "allow_large": ("allow_large", _parse_bool),
    "workers": ("workers", int),
    "d_list": ("d_list", _parse_int_list),
    "T_list": ("T_list", _parse_int_list),
    "seeds": ("seeds", _parse_int_list),
    "learners": ("learners", _parse_str_list),
    "realities": ("realities", _parse_str_list),
}


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    cfg = RunConfig()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{line_no}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        _assign(cfg, key.strip(), value.strip(), f"{source}:{line_no}")
    _apply_env_overrides(cfg)
    validate_config(cfg)
    return cfg


def _assign(cfg: RunConfig, key: str, value: str, where: str) -> None:
    if key not in _KEY_TO_FIELD:
        raise ConfigError(f"{where}: unknown key {key!r}")
    field_name, conv = _KEY_TO_FIELD[key]
    try:
        setattr(cfg, field_name, conv(value))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from None


def _apply_env_overrides(cfg: RunConfig) -> None:
    for key in _KEY_TO_FIELD:
        env_key = ENV_PREFIX + key.upper()
        if env_key in os.environ:
            _assign(cfg, key, os.environ[env_key], f"env {env_key}")


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(), source=str(p))


def validate_config(cfg: RunConfig) -> None:
    if cfg.lam <= 0.0:
        raise ConfigError(f"lambda must be positive, got {cfg.lam}")
    if cfg.mu < 0.0:
        raise ConfigError(f"mu must be nonnegative, got {cfg.mu}")
    if cfg.T < 1:
        raise ConfigError(f"T must be at least 1, got {cfg.T}")
    if cfg.d < 2:
        raise ConfigError(f"d must be at least 2, got {cfg.d}")
    if cfg.learner not in LEARNERS:
        raise ConfigError(f"unknown learner {cfg.learner!r}; choose from {LEARNERS}")
    if cfg.reality not in REALITY_KINDS:
        raise ConfigError(f"unknown reality {cfg.reality!r}; choose from {REALITY_KINDS}")
    if cfg.reality == "replay-file" and not cfg.replay_path:
        raise ConfigError("reality = replay-file requires replay_path")
    if not 0.0 <= cfg.diag_lo < cfg.diag_hi:
        raise ConfigError("diagonal range must satisfy 0 <= diag_lo < diag_hi")
    if not 0.0 < cfg.eps_vol < 1.0:
        raise ConfigError(f"eps_vol must be in (0, 1), got {cfg.eps_vol}")
    if cfg.max_iters < 0 or cfg.workers < 0 or cfg.stall_window < 0:
        raise ConfigError("max_iters, workers and stall_window must be nonnegative")
    for lname in cfg.learners:
        if lname not in LEARNERS:
            raise ConfigError(f"unknown learner {lname!r} in learners")
    for rname in cfg.realities:
        if rname not in REALITY_KINDS:
            raise ConfigError(f"unknown reality {rname!r} in realities")
    if not cfg.seeds:
        raise ConfigError("seeds must be nonempty")
    _desk_scale_guard(cfg, cfg.d, cfg.T)
    for d in cfg.d_list:
        for T in cfg.T_list:
            _desk_scale_guard(cfg, d, T)


def _desk_scale_guard(cfg: RunConfig, d: int, T: int) -> None:
    if d < 2:
        raise ConfigError(f"d must be at least 2, got {d}")
    if T < 1:
        raise ConfigError(f"T must be at least 1, got {T}")
    if (d > DESK_SCALE_D or T > DESK_SCALE_T) and not cfg.allow_large:
        raise ConfigError(
            f"d={d}, T={T} exceeds the supported desk scale "
            f"(d <= {DESK_SCALE_D}, T <= {DESK_SCALE_T}); set allow_large = true to override"
        )
    if (d > DESK_SCALE_D or T > DESK_SCALE_T) and cfg.allow_large:
        log.warning("running beyond desk scale (d=%d, T=%d); expect long solves", d, T)
