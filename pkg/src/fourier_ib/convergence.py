from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from fourier_ib.config import RunConfig
from fourier_ib.diagnostics import error_norm
from fourier_ib.dynamics import FluidParams, SimulationState
from fourier_ib.errors import ConvergenceSetupError
from fourier_ib.pipeline import build_conditioner, integrate
from fourier_ib.scenarios import build_scenario, dipole_domain_length, scenario_params
from fourier_ib.spectral import PhysicalField, inverse_transform

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Case:
    """One member of a sweep: everything needed to rerun it in another process."""

    scenario: str
    n: int
    dt: float
    t_end: float
    n_p: int
    n_r: Optional[int]
    overrides: Mapping[str, Any]
    length: Optional[float] = None
    scheme: str = "rk4"


def _steps(t_end: float, dt: float) -> int:
    q = t_end / dt
    if abs(q - round(q)) > 1e-9 * max(1.0, q):
        raise ConvergenceSetupError(f"t_end={t_end} is not a multiple of dt={dt}")
    return int(round(q))


def run_case(case: Case) -> Tuple[PhysicalField, np.ndarray]:
    """Final omega^BC and fluid mask of one sweep member."""
    kwargs = {"length": case.length} if case.length is not None else {}
    setup = build_scenario(case.scenario, case.n, case.overrides, **kwargs)
    n_r = case.n_r or setup.n_r or 1
    params = FluidParams(nu=setup.nu, dt=case.dt, n_r=n_r, scheme=case.scheme)
    conditioner, _ = build_conditioner(setup, case.n_p, n_r)
    state = integrate(SimulationState(setup.initial_spectrum()), params, conditioner, _steps(case.t_end, case.dt))
    final = conditioner(state.omega_hat, state.time)
    log.info("Case n=%d dt=%g done at t=%.6g", case.n, case.dt, state.time)
    return inverse_transform(final.omega_bc_hat), setup.mask(state.time)


def _run_all(cases: Sequence[Case], max_workers: int) -> List[Tuple[PhysicalField, np.ndarray]]:
    if max_workers <= 1:
        return [run_case(c) for c in cases]
    with ProcessPoolExecutor(max_workers=max_workers) as ex:
        return list(ex.map(run_case, cases))


def local_slopes(x: Sequence[float], err: Sequence[float]) -> List[float]:
    """d log(err) / d log(x) between consecutive entries; NaN for the first."""
    out = [float("nan")]
    for i in range(1, len(x)):
        if err[i] > 0 and err[i - 1] > 0:
            out.append(math.log(err[i] / err[i - 1]) / math.log(x[i] / x[i - 1]))
        else:
            out.append(float("nan"))
    return out


def fitted_slope(x: Sequence[float], err: Sequence[float]) -> float:
    xs = np.asarray(x, dtype=float)
    es = np.asarray(err, dtype=float)
    ok = es > 0
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(xs[ok]), np.log(es[ok]), 1)[0])


def grid_convergence(cfg: RunConfig, grids: Sequence[int], t_end: float) -> pd.DataFrame:
    """Errors of each grid against the finest one, all integrated with cfg.dt."""
    grids = sorted(int(n) for n in grids)
    if len(grids) < 2:
        raise ConvergenceSetupError("a grid sweep needs at least two grids")
    ref_n = grids[-1]
    for n in grids[:-1]:
        if ref_n % n:
            raise ConvergenceSetupError(f"incompatible grids (non-nested): {n} does not divide {ref_n}")

    length = None
    if cfg.scenario.startswith("dipole"):
        # walls land on grid lines of the coarsest grid; nested grids inherit that length
        length = dipole_domain_length(grids[0], scenario_params(cfg.scenario, cfg.overrides))
    cases = [Case(cfg.scenario, n, cfg.dt, t_end, cfg.n_p, cfg.n_r, dict(cfg.overrides), length, cfg.scheme) for n in grids]
    results = _run_all(cases, cfg.max_workers)
    reference = results[-1][0]
    errors = [error_norm(reference, omega, mask) for omega, mask in results[:-1]]
    df = pd.DataFrame({"N": grids[:-1], "error": errors})
    df["local_slope"] = local_slopes(df["N"].tolist(), errors)
    df["fitted_slope"] = fitted_slope(df["N"].tolist(), errors)
    df.attrs["reference"] = ref_n
    return df


def timestep_convergence(cfg: RunConfig, dts: Sequence[float], t_end: float) -> pd.DataFrame:
    """Errors of each dt against the smallest one, all on cfg.n."""
    dts = sorted((float(d) for d in dts), reverse=True)
    if len(dts) < 2:
        raise ConvergenceSetupError("a time-step sweep needs at least two values")
    for d in dts:
        _steps(t_end, d)
    cases = [Case(cfg.scenario, cfg.n, d, t_end, cfg.n_p, cfg.n_r, dict(cfg.overrides), scheme=cfg.scheme) for d in dts]
    results = _run_all(cases, cfg.max_workers)
    reference = results[-1][0]
    errors = [error_norm(reference, omega, mask) for omega, mask in results[:-1]]
    df = pd.DataFrame({"dt": dts[:-1], "error": errors})
    df["local_slope"] = local_slopes(df["dt"].tolist(), errors)
    df["fitted_slope"] = fitted_slope(df["dt"].tolist(), errors)
    df.attrs["reference"] = dts[-1]
    return df


def run_convergence(
    cfg: RunConfig,
    grids: Optional[Sequence[int]] = None,
    dts: Optional[Sequence[float]] = None,
) -> Path:
    """Run a grid or time-step sweep and write convergence.csv to cfg.out_dir."""
    if grids is None and dts is None:
        grids, dts = cfg.convergence_grids, cfg.convergence_dts
    grids = list(grids or [])
    dts = list(dts or [])
    if bool(grids) == bool(dts):
        raise ConvergenceSetupError("give exactly one of a grid list or a dt list")
    t_end = cfg.convergence_t_end if cfg.convergence_t_end is not None else cfg.t_end
    if not t_end > 0.0:
        raise ConvergenceSetupError("convergence needs a positive end time")

    if grids:
        df = grid_convergence(cfg, grids, t_end)
    else:
        df = timestep_convergence(cfg, dts, t_end)

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "convergence.csv"
    df.to_csv(path, index=False, float_format="%.10e")
    log.info("Convergence vs reference %s: fitted slope %.3f -> %s", df.attrs["reference"], df["fitted_slope"].iloc[0], path)
    return path

