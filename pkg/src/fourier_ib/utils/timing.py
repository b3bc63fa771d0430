from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, List


@dataclass
class StepTimer:
    """Wall-clock samples for the time loop.

    A sample is the sum of the section() blocks closed by one commit().
    """

    samples: List[float] = field(default_factory=list)
    _acc: float = 0.0

    @contextmanager
    def section(self) -> Iterator[None]:
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self._acc += time.perf_counter() - t0

    def discard(self) -> None:
        self._acc = 0.0

    def commit(self) -> float:
        dt, self._acc = self._acc, 0.0
        self.samples.append(dt)
        return dt

    @property
    def total(self) -> float:
        return float(sum(self.samples))

    @property
    def mean(self) -> float:
        return self.total / len(self.samples) if self.samples else 0.0
