from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from fourier_ib.errors import SnapshotFormatError
from fourier_ib.spectral import Grid, PhysicalField

MAGIC = b"FPS1"
DTYPE = np.dtype("<f8")


@dataclass(frozen=True)
class FieldSnapshot:
    """One real field on the grid: the header numbers plus (n2, n1) values.

    The optional comment carries `key=value` tokens (e.g. origin1, origin2,
    alpha) after a `#` on the header line.
    """

    n1: int
    n2: int
    l1: float
    l2: float
    time: float
    name: str
    values: np.ndarray
    meta: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_field(cls, f: PhysicalField, time: float, name: str, **meta: object) -> "FieldSnapshot":
        g = f.grid
        tags = {"origin1": repr(g.origin1), "origin2": repr(g.origin2)}
        tags.update({k: str(v) for k, v in meta.items()})
        return cls(g.n1, g.n2, g.l1, g.l2, time, name, f.values, tags)

    def grid(self, origin1: Optional[float] = None, origin2: Optional[float] = None) -> Grid:
        o1 = float(self.meta.get("origin1", 0.0)) if origin1 is None else origin1
        o2 = float(self.meta.get("origin2", 0.0)) if origin2 is None else origin2
        return Grid(self.n1, self.n2, self.l1, self.l2, o1, o2)

    def to_field(self) -> PhysicalField:
        return PhysicalField(self.grid(), np.array(self.values, dtype=float))


def _header(s: FieldSnapshot) -> str:
    if not s.name or any(c.isspace() for c in s.name) or "#" in s.name:
        raise SnapshotFormatError(f"field name must be a single token, got {s.name!r}")
    line = f"{s.n1} {s.n2} {s.l1!r} {s.l2!r} {s.time!r} {s.name}"
    if s.meta:
        line += " # " + " ".join(f"{k}={v}" for k, v in s.meta.items())
    return line + "\n"


def write_snapshot(path: str | Path, snap: FieldSnapshot) -> Path:
    p = Path(path)
    values = np.ascontiguousarray(snap.values, dtype=DTYPE)
    if values.shape != (snap.n2, snap.n1):
        raise SnapshotFormatError(f"values shape {values.shape} does not match header ({snap.n2}, {snap.n1})")
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "wb") as f:
        f.write(MAGIC + b"\n")
        f.write(_header(snap).encode("ascii"))
        f.write(values.tobytes(order="C"))
    return p


def read_snapshot(path: str | Path) -> FieldSnapshot:
    p = Path(path)
    with open(p, "rb") as f:
        magic = f.readline()
        if magic.rstrip(b"\n") != MAGIC:
            raise SnapshotFormatError(f"{p}: bad magic {magic[:8]!r}")
        header = f.readline().decode("ascii", errors="replace").rstrip("\n")
        payload = f.read()

    body, _, comment = header.partition("#")
    parts = body.split()
    if len(parts) != 6:
        raise SnapshotFormatError(f"{p}: malformed header {header!r}")
    try:
        n1, n2 = int(parts[0]), int(parts[1])
        l1, l2, time = float(parts[2]), float(parts[3]), float(parts[4])
    except ValueError as e:
        raise SnapshotFormatError(f"{p}: malformed header {header!r}") from e
    expected = n1 * n2 * DTYPE.itemsize
    if len(payload) != expected:
        raise SnapshotFormatError(f"{p}: payload has {len(payload)} bytes, expected {expected}")

    meta: Dict[str, str] = {}
    for tok in comment.split():
        k, sep, v = tok.partition("=")
        if sep:
            meta[k] = v
    values = np.frombuffer(payload, dtype=DTYPE).reshape(n2, n1).copy()
    return FieldSnapshot(n1, n2, l1, l2, time, parts[5], values, meta)
