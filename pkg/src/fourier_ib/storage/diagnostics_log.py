from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Dict, Optional

import pandas as pd

from fourier_ib.diagnostics import CSV_COLUMNS, DiagnosticsRecord


def _fmt(x: Any) -> Any:
    return repr(float(x)) if isinstance(x, float) else x


@dataclass
class DiagnosticsWriter:
    """Appends one CSV row per step; rows reach disk on flush()."""

    path: Path
    _fh: Optional[IO[str]] = field(default=None, repr=False)
    _writer: Optional[csv.DictWriter] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.path = Path(self.path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        self._fh = open(self.path, "a", newline="", encoding="utf-8")
        self._writer = csv.DictWriter(self._fh, fieldnames=list(CSV_COLUMNS))
        if fresh:
            self._writer.writeheader()

    def write(self, rec: DiagnosticsRecord) -> None:
        assert self._writer is not None
        self._writer.writerow({k: _fmt(v) for k, v in rec.as_row().items()})

    def flush(self) -> None:
        if self._fh is not None:
            self._fh.flush()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self) -> "DiagnosticsWriter":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


def read_diagnostics(path: str | Path) -> pd.DataFrame:
    return pd.read_csv(path)


def write_summary(path: str | Path, summary: Dict[str, Any]) -> Path:
    p = Path(path)
    p.write_text(json.dumps(summary, indent=2, sort_keys=True, default=float), encoding="utf-8")
    return p
