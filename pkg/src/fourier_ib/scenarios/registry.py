from __future__ import annotations

from dataclasses import fields, replace
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from fourier_ib.errors import ConfigError
from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.scenarios.cavity import CavityParams, build_cavity
from fourier_ib.scenarios.cylinder import CylinderParams, build_cylinder
from fourier_ib.scenarios.dipole import DipoleParams, build_dipole
from fourier_ib.scenarios.taylor_green import TaylorGreenParams, build_taylor_green

SCENARIOS: Dict[str, Tuple[Any, Callable[..., ScenarioSetup]]] = {
    "taylor_green": (TaylorGreenParams(), build_taylor_green),
    "dipole": (DipoleParams(), build_dipole),
    "dipole_nowall": (DipoleParams(walls=False), build_dipole),
    "cylinder": (CylinderParams(), build_cylinder),
    "cavity": (CavityParams(), build_cavity),
}


def _coerce(name: str, default: Any, value: Any) -> Any:
    if isinstance(default, bool):
        return bool(value)
    if isinstance(default, int):
        return int(value)
    if isinstance(default, float):
        return float(value)
    if isinstance(default, tuple):
        return tuple(tuple(v) if isinstance(v, (list, tuple)) else v for v in value)
    return value


def scenario_params(name: str, overrides: Optional[Mapping[str, Any]] = None) -> Any:
    """Default parameters of scenario `name` with `overrides` applied."""
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}")
    params, _ = SCENARIOS[name]
    known = {f.name: getattr(params, f.name) for f in fields(params)}
    updates: Dict[str, Any] = {}
    for k, v in (overrides or {}).items():
        if k not in known:
            raise ConfigError(f"scenario {name!r} has no parameter {k!r}")
        try:
            updates[k] = v if known[k] is None else _coerce(k, known[k], v)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"scenario parameter {k}={v!r}: {e}") from e
    return replace(params, **updates)


def build_scenario(
    name: str,
    n: int,
    overrides: Optional[Mapping[str, Any]] = None,
    **kwargs: Any,
) -> ScenarioSetup:
    params = scenario_params(name, overrides)
    _, builder = SCENARIOS[name]
    return builder(params, n, **kwargs)
