from __future__ import annotations

import argparse
import logging
import sys

from fourier_ib.config import RunConfig, load_config
from fourier_ib.convergence import run_convergence
from fourier_ib.errors import (
    ConfigError,
    ConvergenceSetupError,
    GeometryError,
    NumericalInstabilityError,
    SnapshotFormatError,
)
from fourier_ib.pipeline import filter_snapshot, run_simulation
from fourier_ib.utils import setup_logging

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _csv(kind: type):
    def parse(text: str) -> list:
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from e

    return parse


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="fourier-ib")
    sub = parser.add_subparsers(dest="cmd", required=True)

    runp = sub.add_parser("run", help="Run one simulation")
    runp.add_argument("--config", required=True, help="Path to a scenario YAML")
    runp.add_argument("--out", help="Output directory (overrides run.out_dir)")
    runp.add_argument("--steps", type=int, help="Number of steps (overrides run.steps / run.t_end)")

    convp = sub.add_parser("convergence", help="Grid or time-step convergence study")
    convp.add_argument("--config", required=True)
    convp.add_argument("--out")
    group = convp.add_mutually_exclusive_group()
    group.add_argument("--grids", type=_csv(int), help="Comma-separated grid sizes, e.g. 128,256,512")
    group.add_argument("--dts", type=_csv(float), help="Comma-separated time steps")

    filp = sub.add_parser("filter", help="Helmholtz-filter a field snapshot")
    filp.add_argument("--in", dest="inp", required=True)
    filp.add_argument("--calpha", type=float, required=True)
    filp.add_argument("--out", required=True)

    args = parser.parse_args(argv)

    try:
        if args.cmd == "run":
            cfg = RunConfig.from_cfg(load_config(args.config), out_dir=args.out, steps=args.steps)
            run_simulation(cfg)
            return EXIT_OK

        if args.cmd == "convergence":
            cfg = RunConfig.from_cfg(load_config(args.config), out_dir=args.out)
            setup_logging(cfg.log_level)
            run_convergence(cfg, grids=args.grids, dts=args.dts)
            return EXIT_OK

        if args.cmd == "filter":
            setup_logging("INFO")
            filter_snapshot(args.inp, args.calpha, args.out)
            return EXIT_OK
    except (ConfigError, ConvergenceSetupError, GeometryError, SnapshotFormatError, ValueError) as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalInstabilityError as e:
        print(f"numerical abort: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
