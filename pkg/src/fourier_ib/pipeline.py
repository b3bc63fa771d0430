from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from fourier_ib.boundary import BoundaryConditioner, ConditioningConfig
from fourier_ib.config import RunConfig
from fourier_ib.diagnostics import (
    DiagnosticsRecord,
    energy,
    enstrophy,
    max_divergence,
    mean_vorticity,
    steady_residual,
    window_spectrum_decays,
)
from fourier_ib.dynamics import (
    Conditioned,
    Conditioner,
    FluidParams,
    SimulationState,
    cfl_number,
    check_diffusion_stability,
    periodic_conditioner,
    rk4_step,
)
from fourier_ib.errors import ConfigError, NumericalInstabilityError
from fourier_ib.filtering import filter_field
from fourier_ib.reporting import render_run_report
from fourier_ib.scenarios import ScenarioSetup, build_scenario
from fourier_ib.spectral import (
    PADDED,
    PLAIN,
    TRANSFORMS,
    PhysicalField,
    forward_transform,
    inverse_transform,
)
from fourier_ib.storage import (
    DiagnosticsWriter,
    FieldSnapshot,
    read_diagnostics,
    read_snapshot,
    write_snapshot,
    write_summary,
)
from fourier_ib.utils import StepTimer, setup_logging

log = logging.getLogger(__name__)

RK4_STAGES = 4


def _ensure_dir(p: str | Path) -> Path:
    d = Path(p)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _count_delta(before: Dict[str, int], after: Dict[str, int]) -> Dict[str, int]:
    return {k: after.get(k, 0) - before.get(k, 0) for k in (PLAIN, PADDED)}


def build_conditioner(
    setup: ScenarioSetup, n_p: int, n_r: int
) -> Tuple[Conditioner, Optional[BoundaryConditioner]]:
    """The scenario's conditioner, or the plain periodic path when it has no bodies or window."""
    if setup.periodic:
        return periodic_conditioner, None
    bc = BoundaryConditioner(
        setup.grid,
        ConditioningConfig(n_p=n_p, n_r=n_r, bodies=tuple(setup.bodies), window=setup.window),
    )
    return bc, bc


def initial_state(setup: ScenarioSetup, restart_from: Optional[str] = None) -> SimulationState:
    if not restart_from:
        return SimulationState(setup.initial_spectrum())
    snap = read_snapshot(restart_from)
    g = setup.grid
    if (snap.n1, snap.n2) != (g.n1, g.n2) or not np.allclose((snap.l1, snap.l2), (g.l1, g.l2), rtol=1e-12):
        raise ConfigError(
            f"restart snapshot {restart_from} is {snap.n1}x{snap.n2} on ({snap.l1}, {snap.l2}); "
            f"run grid is {g.n1}x{g.n2} on ({g.l1}, {g.l2})"
        )
    omega = PhysicalField(g, np.array(snap.values, dtype=float))
    step = int(snap.meta.get("step", 0))
    log.info("Restarting from %s at t=%.6g (step %d)", restart_from, snap.time, step)
    return SimulationState(forward_transform(omega).without_mean(), time=snap.time, step_index=step)


def integrate(
    state: SimulationState,
    params: FluidParams,
    conditioner: Conditioner,
    steps: int,
    on_step: Optional[Callable[[SimulationState, Conditioned], None]] = None,
) -> SimulationState:
    """Advance `steps` RK4 steps; `on_step` sees each state with its conditioning."""
    for _ in range(steps):
        cond = conditioner(state.omega_hat, state.time)
        if on_step is not None:
            on_step(state, cond)
        state = rk4_step(state, params, conditioner, first=cond)
    return state


@dataclass
class _Probe:
    """Per-step diagnostics from a conditioned state."""

    setup: ScenarioSetup
    params: FluidParams
    bc: Optional[BoundaryConditioner]
    _mask: Optional[np.ndarray] = None

    def mask(self, t: float) -> np.ndarray:
        if self._mask is None or any(not b.is_static for b in self.setup.bodies):
            self._mask = self.setup.mask(t)
        return self._mask

    def record(
        self,
        state: SimulationState,
        cond: Conditioned,
        previous: Optional[SimulationState],
    ) -> Tuple[DiagnosticsRecord, Tuple[PhysicalField, PhysicalField]]:
        u1 = inverse_transform(cond.u_hat[0])
        u2 = inverse_transform(cond.u_hat[1])
        omega_bc = inverse_transform(cond.omega_bc_hat)
        m = self.mask(state.time)
        rec = DiagnosticsRecord(
            step=state.step_index,
            time=state.time,
            E=energy((u1, u2), m),
            Z=enstrophy(omega_bc, m),
            CFL=cfl_number((u1, u2), self.params.dt, self.setup.grid.h),
            max_div=max_divergence(cond.u_hat),
            mean_vorticity=mean_vorticity(cond.omega_bc_hat),
            bc_residual=self.bc.boundary_residual(u1.values, u2.values, state.time) if self.bc else 0.0,
            steady_residual=(
                steady_residual(previous.omega_hat, state.omega_hat, self.params.dt)
                if previous is not None
                else float("nan")
            ),
        )
        return rec, (u1, u2)


def _write_snapshots(
    out: Path,
    state: SimulationState,
    velocity: Optional[Tuple[PhysicalField, PhysicalField]],
    c_alpha: Optional[float],
) -> None:
    tag = f"{state.step_index:07d}"
    omega = inverse_transform(state.omega_hat)
    snaps = out / "snapshots"
    write_snapshot(snaps / f"omega_{tag}.fps", FieldSnapshot.from_field(omega, state.time, "omega", step=state.step_index))
    if velocity is not None:
        for name, f in zip(("u1", "u2"), velocity):
            write_snapshot(snaps / f"{name}_{tag}.fps", FieldSnapshot.from_field(f, state.time, name, step=state.step_index))
    if c_alpha is not None:
        filtered, alpha = filter_field(omega, c_alpha)
        write_snapshot(
            snaps / f"omega_filtered_{tag}.fps",
            FieldSnapshot.from_field(filtered, state.time, "omega_filtered", step=state.step_index, alpha=repr(alpha)),
        )
    log.info("Wrote snapshots for step %d (t=%.6g)", state.step_index, state.time)


def measure_conditioning_overhead(
    state: SimulationState,
    params: FluidParams,
    conditioner: Conditioner,
    n_steps: int = 3,
) -> Dict[str, Any]:
    """Time and count transforms of a few steps with and without conditioning."""

    def run(cond: Conditioner) -> Tuple[float, Dict[str, int]]:
        c0 = TRANSFORMS.snapshot()
        t0 = time.perf_counter()
        integrate(state, params, cond, n_steps)
        return (time.perf_counter() - t0) / n_steps, _count_delta(c0, TRANSFORMS.snapshot())

    plain_s, plain_n = run(periodic_conditioner)
    cond_s, cond_n = run(conditioner)
    substeps = n_steps * RK4_STAGES
    out = {
        "plain_seconds_per_step": plain_s,
        "conditioned_seconds_per_step": cond_s,
        "overhead_fraction": (cond_s - plain_s) / plain_s if plain_s > 0 else float("nan"),
        "extra_plain_transforms_per_substep": (cond_n[PLAIN] - plain_n[PLAIN]) / substeps,
        "padded_transforms_per_substep": cond_n[PADDED] / substeps,
    }
    log.info(
        "Conditioning overhead: %.1f%% wall time, %.1f extra plain transforms per substep",
        100.0 * out["overhead_fraction"],
        out["extra_plain_transforms_per_substep"],
    )
    return out


def run_simulation(cfg: RunConfig) -> Path:
    setup_logging(cfg.log_level, Path(cfg.out_dir) / "run.log")
    setup = build_scenario(cfg.scenario, cfg.n, cfg.overrides)
    n_r = cfg.n_r or setup.n_r or 1
    params = FluidParams(nu=setup.nu, dt=cfg.dt, n_r=n_r, scheme=cfg.scheme)
    if params.scheme == "rk4":
        check_diffusion_stability(setup.grid, params.nu, params.dt)
    conditioner, bc = build_conditioner(setup, cfg.n_p, n_r)

    out = _ensure_dir(cfg.out_dir)
    g = setup.grid
    log.info(
        "Run scenario=%s grid=%dx%d l=(%.6g, %.6g) dt=%g steps=%d n_p=%d n_r=%d out=%s",
        setup.name, g.n1, g.n2, g.l1, g.l2, cfg.dt, cfg.steps, cfg.n_p, n_r, out,
    )

    state = initial_state(setup, cfg.restart_from)
    probe = _Probe(setup, params, bc)
    timer = StepTimer()
    counts = {PLAIN: 0, PADDED: 0}
    summary: Dict[str, Any] = {
        "scenario": setup.name,
        "n1": g.n1,
        "n2": g.n2,
        "l1": g.l1,
        "l2": g.l2,
        "dt": cfg.dt,
        "nu": setup.nu,
        "n_p": cfg.n_p,
        "n_r": n_r,
        "scheme": params.scheme,
        "steps": cfg.steps,
        "start_time": state.time,
        "scenario_info": dict(setup.info),
    }

    if setup.window is not None:
        try:
            decays: Optional[bool] = window_spectrum_decays(setup.window)
        except ValueError:
            decays = None
        summary["window_spectrum_decays"] = decays
        if decays is False:
            log.warning("Window spectrum envelope does not decay over the high band; consider a wider rise")

    if cfg.measure_overhead and bc is not None:
        summary["overhead"] = measure_conditioning_overhead(state, params, conditioner)

    previous: Optional[SimulationState] = None
    last_record: Optional[DiagnosticsRecord] = None
    first_step = state.step_index
    final_step = first_step + cfg.steps
    status = "completed"
    writer = DiagnosticsWriter(out / "diagnostics.csv")
    try:
        while True:
            c0 = TRANSFORMS.snapshot()
            with timer.section():
                cond = conditioner(state.omega_hat, state.time)
            c1 = TRANSFORMS.snapshot()

            last_record, velocity = probe.record(state, cond, previous)
            writer.write(last_record)
            k = state.step_index
            if k == final_step or (cfg.snapshot_every and (k - first_step) % cfg.snapshot_every == 0):
                _write_snapshots(out, state, velocity, cfg.c_alpha)
                writer.flush()
            if k == final_step:
                timer.discard()
                break
            if (k - first_step) % cfg.log_every == 0:
                log.info(
                    "step %d t=%.5f E=%.6g Z=%.6g CFL=%.3f bc=%.2e",
                    k, state.time, last_record.E, last_record.Z, last_record.CFL, last_record.bc_residual,
                )

            c2 = TRANSFORMS.snapshot()
            try:
                with timer.section():
                    nxt = rk4_step(state, params, conditioner, first=cond)
            finally:
                timer.commit()
            for kind, n in _count_delta(c0, c1).items():
                counts[kind] += n
            for kind, n in _count_delta(c2, TRANSFORMS.snapshot()).items():
                counts[kind] += n
            previous, state = state, nxt
    except NumericalInstabilityError as e:
        status = "aborted"
        summary["error"] = f"{type(e).__name__}: {e}"
        log.error("Numerical abort at step %s (t=%s): %s; flushing last good state", e.step, e.time, e)
        _write_snapshots(out, state, None, None)
        raise
    except Exception as e:
        status = "failed"
        summary["error"] = f"{type(e).__name__}: {e}"
        log.error("Run failed at step %d (t=%.6g): %s", state.step_index, state.time, e)
        raise
    finally:
        writer.close()
        n_done = max(len(timer.samples), 1)
        summary.update(
            {
                "status": status,
                "steps_completed": len(timer.samples),
                "end_time": state.time,
                "wall_time_total": timer.total,
                "wall_time_per_step": timer.mean,
                "transforms_per_step": {k: v / n_done for k, v in counts.items()},
                "transforms_per_substep": {k: v / (n_done * RK4_STAGES) for k, v in counts.items()},
                "final": last_record.as_row() if last_record is not None else None,
            }
        )
        write_summary(out / "summary.json", summary)
        if cfg.report and status == "completed":
            html = render_run_report(summary, read_diagnostics(out / "diagnostics.csv"))
            (out / "report.html").write_text(html, encoding="utf-8")

    log.info("Done. Wrote outputs to %s", out)
    return out


def filter_snapshot(in_path: str | Path, c_alpha: float, out_path: str | Path) -> Path:
    """Helmholtz-filter a stored field; alpha and c_alpha go into the header comment."""
    snap = read_snapshot(in_path)
    filtered, alpha = filter_field(snap.to_field(), c_alpha)
    meta = {k: v for k, v in snap.meta.items() if k not in ("origin1", "origin2")}
    meta.update(c_alpha=repr(c_alpha), alpha=repr(alpha))
    out = FieldSnapshot.from_field(filtered, snap.time, snap.name, **meta)
    return write_snapshot(out_path, out)
