from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import List, Optional

FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"

# third-party loggers that flood DEBUG output during report rendering
_NOISY = ("matplotlib", "PIL")


def setup_logging(level: str = "INFO", log_file: Optional[Path] = None) -> None:
    """Route fourier_ib logs to stdout and, for a run, to <out_dir>/run.log as well.

    Calling it again replaces the handlers of the previous call.
    """
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stdout)]
    if log_file is not None:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode="a", encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=FORMAT,
        handlers=handlers,
        force=True,
    )
    for name in _NOISY:
        logging.getLogger(name).setLevel(logging.WARNING)
