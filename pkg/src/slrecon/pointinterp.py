"""Point-value interpolation comparators.

These shift data by interpolating *point values* instead of taking sliding
averages of a conservative reconstruction. ``plagrange3`` is a fixed cubic
stencil; ``pweno4`` blends two quadratics with data-dependent weights, which
breaks translation invariance and hence discrete conservation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from slrecon.core import BoundaryPolicy, NumericalError, OutOfDomainError, decompose_shift, ghost_extend

KINDS = ("plagrange3", "pweno4")


def _stencil(values, offset: int, policy: BoundaryPolicy) -> tuple[np.ndarray, ...]:
    """Columns ``u[j-1], u[j], u[j+1], u[j+2]`` with ``j = i + offset``."""
    n = values.size
    width = abs(offset) + 2
    ext = ghost_extend(values, policy, width)
    base = np.arange(n) + offset + width
    return tuple(ext[base + s] for s in (-1, 0, 1, 2))


def lagrange3_weights(theta: float) -> np.ndarray:
    t = theta
    return np.array([
        -t * (t - 1.0) * (t - 2.0) / 6.0,
        (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
        -(t + 1.0) * t * (t - 2.0) / 2.0,
        (t + 1.0) * t * (t - 1.0) / 6.0,
    ])


def weno4_point(um, u0, up, upp, theta: float, eps: float = 1e-6, p: int = 2) -> np.ndarray:
    """Nonlinear blend of the quadratics on ``{j-1, j, j+1}`` and ``{j, j+1, j+2}``."""
    t = theta
    d2a = up - 2.0 * u0 + um
    d2b = u0 - 2.0 * up + upp
    q0 = u0 + t * (up - um) / 2.0 + t * t * d2a / 2.0
    q1 = u0 + t * (-3.0 * u0 + 4.0 * up - upp) / 2.0 + t * t * d2b / 2.0
    b0 = 13.0 / 12.0 * d2a**2 + 0.25 * (up - um) ** 2
    b1 = 13.0 / 12.0 * d2b**2 + 0.25 * (3.0 * u0 - 4.0 * up + upp) ** 2
    # these linear weights reproduce the cubic through all four points
    a0 = (2.0 - t) / 3.0 / (eps + b0) ** p
    a1 = (1.0 + t) / 3.0 / (eps + b1) ** p
    return (a0 * q0 + a1 * q1) / (a0 + a1)


@dataclass(frozen=True)
class PointInterpolation:
    kind: str = "pweno4"
    epsilon: float = 1e-6

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown point interpolation {self.kind!r}")

    @property
    def degree(self) -> int:
        return 3

    @property
    def conservative(self) -> bool:
        return False

    def shift(self, values, dx: float, displacement: float,
              policy=BoundaryPolicy.PERIODIC) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        policy = BoundaryPolicy.parse(policy)
        q = decompose_shift(displacement, dx)
        if q.offset == 0 and q.theta == 0.0:
            return values.copy()
        if policy is BoundaryPolicy.FREEFLOW and abs(q.offset) > values.size:
            raise OutOfDomainError("shift exceeds the domain")
        cols = _stencil(values, q.offset, policy)
        if self.kind == "plagrange3":
            out = lagrange3_weights(q.theta) @ np.stack(cols)
        else:
            out = weno4_point(*cols, q.theta, self.epsilon)
        if not np.all(np.isfinite(out)):
            raise NumericalError("non-finite value in point interpolation")
        return out
