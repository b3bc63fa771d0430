from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import yaml

from fourier_ib.dynamics.state import SCHEMES
from fourier_ib.errors import ConfigError

log = logging.getLogger(__name__)

SECTIONS = ("run", "grid", "boundary", "scenario", "convergence")

_TRUE = frozenset({"1", "true", "yes", "on"})
_FALSE = frozenset({"0", "false", "no", "off"})


class Cfg:
    """Parsed run YAML: one mapping per section, read through dotted paths."""

    def __init__(self, raw: Dict[str, Any]) -> None:
        for name, body in raw.items():
            if name not in SECTIONS:
                log.warning("Ignoring unknown config section %r", name)
            elif body is not None and not isinstance(body, dict):
                raise ConfigError(f"section {name!r} must be a mapping, got {type(body).__name__}")
        self.raw = raw

    def get(self, path: str, default: Any = None) -> Any:
        cur: Any = self.raw
        for part in path.split("."):
            if not isinstance(cur, dict) or part not in cur:
                return default
            cur = cur[part]
        return cur

    def section(self, name: str) -> Dict[str, Any]:
        return dict(self.raw.get(name) or {})

    def number(self, path: str, kind: type, default: Any = None) -> Any:
        v = self.get(path, default)
        if v is None:
            return None
        if isinstance(v, bool):
            raise ConfigError(f"{path}: expected {kind.__name__}, got {v!r}")
        try:
            return kind(v)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{path}: expected {kind.__name__}, got {v!r}") from e

    def numbers(self, path: str, kind: type) -> Tuple[Any, ...]:
        """List of numbers, also accepted as a comma-separated string."""
        v = self.get(path, []) or []
        if isinstance(v, str):
            v = [x for x in v.split(",") if x.strip()]
        elif not isinstance(v, (list, tuple)):
            v = [v]
        try:
            return tuple(kind(x) for x in v)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{path}: expected a list of {kind.__name__}, got {v!r}") from e

    def flag(self, path: str, default: bool) -> bool:
        v = self.get(path, default)
        if isinstance(v, bool):
            return v
        s = str(v).strip().lower()
        if s in _TRUE:
            return True
        if s in _FALSE:
            return False
        raise ConfigError(f"{path}: expected a boolean, got {v!r}")

    def updated(self, **sections: Dict[str, Any]) -> "Cfg":
        """Copy with the given keys merged into their sections."""
        raw = copy.deepcopy(self.raw)
        for name, values in sections.items():
            merged = dict(raw.get(name) or {})
            merged.update(values)
            raw[name] = merged
        return Cfg(raw)


def load_config(path: str) -> Cfg:
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return Cfg(raw)


# Scenario parameters that may legitimately be zero or negative.
_SIGNED_KEYS = frozenset({"phase_start", "wall_n_p"})


def _is_multiple(value: float, step: float) -> bool:
    q = value / step
    return abs(q - round(q)) <= 1e-9 * max(1.0, abs(q))


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters. Unset values fall back to the scenario defaults."""

    scenario: str
    n: int
    dt: float
    steps: int
    out_dir: str = "runs/out"
    overrides: Dict[str, Any] = field(default_factory=dict)
    n_p: int = 2
    n_r: Optional[int] = None
    scheme: str = "rk4"
    snapshot_every: int = 0
    log_every: int = 100
    log_level: str = "INFO"
    c_alpha: Optional[float] = None
    restart_from: Optional[str] = None
    report: bool = True
    measure_overhead: bool = False
    convergence_grids: Tuple[int, ...] = ()
    convergence_dts: Tuple[float, ...] = ()
    convergence_t_end: Optional[float] = None
    max_workers: int = 1

    @property
    def t_end(self) -> float:
        return self.steps * self.dt

    @classmethod
    def from_cfg(cls, cfg: Cfg, *, out_dir: Optional[str] = None, steps: Optional[int] = None) -> "RunConfig":
        scenario = cfg.get("run.scenario")
        if not scenario:
            raise ConfigError("run.scenario is required")
        n = cfg.number("grid.n", int)
        if n is None or n < 8 or n % 2:
            raise ConfigError(f"grid.n must be an even integer >= 8, got {n!r}")
        dt = cfg.number("run.dt", float)
        if dt is None or not dt > 0.0:
            raise ConfigError(f"run.dt must be positive, got {dt!r}")

        if steps is None:
            steps = cfg.number("run.steps", int)
        if steps is None:
            t_end = cfg.number("run.t_end", float)
            if t_end is None:
                raise ConfigError("one of run.steps or run.t_end is required")
            if t_end < 0.0 or not _is_multiple(t_end, dt):
                raise ConfigError(f"run.t_end={t_end} is not a non-negative multiple of dt={dt}")
            steps = int(round(t_end / dt))
        if steps < 0:
            raise ConfigError(f"run.steps must be >= 0, got {steps}")

        snap_every = 0
        interval = cfg.number("run.snapshot_interval", float)
        if interval is not None:
            if not interval > 0.0 or not _is_multiple(interval, dt):
                raise ConfigError(f"run.snapshot_interval={interval} is not a positive multiple of dt={dt}")
            snap_every = int(round(interval / dt))

        n_p = cfg.number("boundary.n_p", int, 2)
        if n_p not in (0, 1, 2):
            raise ConfigError(f"boundary.n_p must be 0, 1 or 2, got {n_p}")
        n_r = cfg.number("boundary.n_r", int)
        if n_r is not None and not 1 <= n_r <= 3:
            raise ConfigError(f"boundary.n_r must be in 1..3, got {n_r}")

        overrides = cfg.section("scenario")
        for key, path in (("window_cells", "boundary.window_cells"), ("margin_cells", "boundary.margin_cells")):
            v = cfg.get(path)
            if v is not None:
                overrides[key] = v
        for k, v in overrides.items():
            if isinstance(v, (int, float)) and not isinstance(v, bool) and k not in _SIGNED_KEYS and v <= 0:
                raise ConfigError(f"scenario.{k} must be positive, got {v}")

        scheme = str(cfg.get("run.scheme", "rk4"))
        if scheme not in SCHEMES:
            raise ConfigError(f"run.scheme must be one of {SCHEMES}, got {scheme!r}")

        c_alpha = cfg.number("run.c_alpha", float)
        if c_alpha is not None and not c_alpha > 0.0:
            raise ConfigError(f"run.c_alpha must be positive, got {c_alpha}")

        grids = cfg.numbers("convergence.grids", int)
        dts = cfg.numbers("convergence.dts", float)
        conv_t = cfg.number("convergence.t_end", float)
        if conv_t is not None and not conv_t > 0.0:
            raise ConfigError(f"convergence.t_end must be positive, got {conv_t}")

        return cls(
            scenario=str(scenario),
            n=n,
            dt=dt,
            steps=steps,
            out_dir=str(out_dir or cfg.get("run.out_dir", "runs/out")),
            overrides=overrides,
            n_p=n_p,
            n_r=n_r,
            scheme=scheme,
            snapshot_every=snap_every,
            log_every=max(1, cfg.number("run.log_every", int, 100)),
            log_level=str(cfg.get("run.log_level", "INFO")),
            c_alpha=c_alpha,
            restart_from=cfg.get("run.restart_from"),
            report=cfg.flag("run.report", True),
            measure_overhead=cfg.flag("run.measure_overhead", False),
            convergence_grids=grids,
            convergence_dts=dts,
            convergence_t_end=conv_t,
            max_workers=max(1, cfg.number("convergence.max_workers", int, 1)),
        )
