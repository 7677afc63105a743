"""Command line entry point: ``slrecon <experiment> --config <path> [--out <dir>]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from slrecon import broadwell
from slrecon.core import NumericalError
from slrecon.harness import experiments as ex
from slrecon.harness.config import EXPERIMENTS, ConfigError, RunConfig, load_config
from slrecon.harness.io import write_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _write_solution(config: RunConfig, state, out: Path) -> Path:
    path = out / "solution.csv"
    if config.experiment == "broadwell":
        rho, m, z = broadwell.moments(state)
        return write_csv(path, ["x", "rho", "m", "z"], [state.grid.centers, rho, m, z])
    if config.experiment == "xinjin2d":
        x, y = state.grid.meshgrid()
        return write_csv(path, ["x", "y", "u"], [x, y, state.u.values])
    return write_csv(path, ["x", "u", "v"], [state.grid.centers, state.u.values, state.v.values])


def _write_convergence(report: ex.ConvergenceReport, out: Path) -> None:
    orders = np.append(report.orders, np.nan)
    write_csv(out / "convergence.csv", ["n", "error", "order"], [report.sizes, report.errors, orders])
    for n, e, o in zip(report.sizes, report.errors, orders):
        print(f"N={n:5d}  error={e:.6e}  order={o:.3f}")


def run(config: RunConfig, out: Path) -> None:
    if config.experiment == "recon-sweep":
        rep = ex.run_conservation_sweep(config)
        write_csv(out / "sweep.csv", ["n", "err", "min_value"], [[config.n[0]], [rep.err], [rep.min_value]])
        print(f"{rep.recon} on {rep.function}: Err={rep.err:.4e}  min Q={rep.min_value:.4e}")
    elif config.experiment == "recon-convergence":
        _write_convergence(ex.run_recon_convergence(config), out)
    elif config.is_study:
        _write_convergence(ex.run_convergence(config), out)
    else:
        res = ex.run_shock(config)
        print(f"wrote {_write_solution(config, res.state, out)}")
        write_csv(out / "econ.csv", ["t", "E_con"], [res.series.t, res.series.e_con])
        print(f"max E_con = {res.series.max():.3e}")
        if config.experiment == "xinjin1d" and config.init == "step":
            pos = res.shock_position
            print("shock position = " + ("not found" if pos is None else f"{pos:.6f}"))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="slrecon", description=__doc__)
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", required=True, help="path to a key = value config file")
    parser.add_argument("--out", default=None, help="output directory (default: config 'out' or ./slrecon-out)")
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, experiment=args.experiment)
        out = Path(args.out or config.out or "slrecon-out")
        run(config, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
