from fourier_ib.storage.diagnostics_log import DiagnosticsWriter, read_diagnostics, write_summary
from fourier_ib.storage.snapshot import FieldSnapshot, read_snapshot, write_snapshot

__all__ = [
    "DiagnosticsWriter",
    "FieldSnapshot",
    "read_diagnostics",
    "read_snapshot",
    "write_snapshot",
    "write_summary",
]
