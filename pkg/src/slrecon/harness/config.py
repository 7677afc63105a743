"""Plain-text run configuration: ``key = value`` lines with ``#`` comments."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from slrecon.core import BoundaryPolicy
from slrecon.pointinterp import KINDS as POINT_KINDS
from slrecon.recon1d import KINDS as RECON_KINDS

EXPERIMENTS = ("recon-sweep", "recon-convergence", "xinjin1d", "xinjin2d", "broadwell")
INTEGRATORS = ("euler", "dirk2", "dirk43", "bdf2", "bdf3")

INITS = {
    "recon-sweep": ("u1", "u2", "u3"),
    "recon-convergence": ("sine", "sine2d"),
    "xinjin1d": ("smooth", "step"),
    "xinjin2d": ("smooth", "smooth-shock", "quadrant"),
    "broadwell": ("smooth", "case1", "case2"),
}
DEFAULT_INIT = {"recon-sweep": "u1", "recon-convergence": "sine", "xinjin1d": "smooth",
                "xinjin2d": "smooth", "broadwell": "smooth"}


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    n: tuple[int, ...] = (40,)
    n2: int | None = None
    cfl: float = 0.5
    kappa: float = 1.0
    tfinal: float = 1.0
    recon: str = "cweno23"
    integrator: str = "dirk2"
    boundary: str = "periodic"
    epsilon: float | None = None
    p: int = 2
    init: str | None = None
    theta: float = 0.4
    out: str | None = None

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if not self.n or any(k <= 0 for k in self.n):
            raise ConfigError("n must list positive grid sizes")
        if self.n2 is not None and self.n2 <= 0:
            raise ConfigError("n2 must be positive")
        for name in ("cfl", "kappa", "tfinal"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.p < 1:
            raise ConfigError("p must be a positive integer")
        if not 0.0 <= self.theta < 1.0:
            raise ConfigError("theta must lie in [0, 1)")
        if self.recon not in RECON_KINDS + POINT_KINDS:
            raise ConfigError(f"unknown recon {self.recon!r}")
        if self.integrator not in INTEGRATORS:
            raise ConfigError(f"unknown integrator {self.integrator!r}")
        try:
            BoundaryPolicy.parse(self.boundary)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.init is None:
            object.__setattr__(self, "init", DEFAULT_INIT[self.experiment])
        if self.init not in INITS[self.experiment]:
            raise ConfigError(f"init {self.init!r} is not defined for {self.experiment}; "
                              f"choose from {INITS[self.experiment]}")

    @property
    def policy(self) -> BoundaryPolicy:
        return BoundaryPolicy.parse(self.boundary)

    @property
    def is_study(self) -> bool:
        return len(self.n) > 1


def _convert(key: str, raw: str):
    try:
        if key == "n":
            return tuple(int(tok) for tok in raw.replace(" ", "").split(",") if tok)
        if key in ("n2", "p"):
            return int(raw)
        if key in ("cfl", "kappa", "tfinal", "epsilon", "theta"):
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return raw


def parse_config(text: str, **overrides) -> RunConfig:
    """Parse config text; keyword ``overrides`` win over file values."""
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _convert(key, raw)
    for key, val in overrides.items():
        if val is None:
            continue
        if key == "experiment" and "experiment" in values and values["experiment"] != val:
            raise ConfigError(f"config declares experiment {values['experiment']!r}, "
                              f"command line asks for {val!r}")
        values[key] = val
    if "experiment" not in values:
        raise ConfigError("missing experiment")
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path, **overrides) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, **overrides)


def with_n(config: RunConfig, n: int) -> RunConfig:
    return replace(config, n=(n,))
