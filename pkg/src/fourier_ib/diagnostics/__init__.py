from fourier_ib.diagnostics.metrics import (
    CSV_COLUMNS,
    DiagnosticsRecord,
    energy,
    enstrophy,
    error_norm,
    fluid_mask,
    max_divergence,
    mean_vorticity,
    steady_residual,
    truncate_to,
    window_shell_spectrum,
    window_spectrum_decays,
    window_spectrum_envelope,
)

__all__ = [
    "CSV_COLUMNS",
    "DiagnosticsRecord",
    "energy",
    "enstrophy",
    "error_norm",
    "fluid_mask",
    "max_divergence",
    "mean_vorticity",
    "steady_residual",
    "truncate_to",
    "window_shell_spectrum",
    "window_spectrum_decays",
    "window_spectrum_envelope",
]
