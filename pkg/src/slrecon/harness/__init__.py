"""Configuration, experiment drivers and the command line interface."""

from slrecon.harness.config import ConfigError, RunConfig, load_config, parse_config
from slrecon.harness.experiments import (
    ConservationSeries,
    ConvergenceReport,
    detect_shock_position,
    run_conservation_sweep,
    run_convergence,
    run_recon_convergence,
    run_shock,
)

__all__ = [
    "ConfigError", "RunConfig", "load_config", "parse_config",
    "ConservationSeries", "ConvergenceReport", "detect_shock_position",
    "run_conservation_sweep", "run_convergence", "run_recon_convergence", "run_shock",
]
