"""Broadwell Riemann problems and the large time step regime.

Case 1 runs at CFL 1.9 with kappa = 1; Case 2 is close to the fluid limit.
"""

import numpy as np

from slrecon import broadwell
from slrecon.core import Grid1D
from slrecon.harness import experiments as ex
from slrecon.harness.config import RunConfig
from slrecon.timeint import implicit_euler_table

for init, kappa, cfl in (("case1", 1.0, 1.9), ("case1", 1.0, 0.5), ("case2", 1e-8, 0.8)):
    cfg = RunConfig("broadwell", n=(200,), cfl=cfl, kappa=kappa, tfinal=0.25, init=init, boundary="freeflow")
    res = ex.run_shock(cfg)
    rho, m, z = broadwell.moments(res.state)
    print(f"{init} kappa={kappa:g} CFL={cfl}: rho in [{rho.min():.3f}, {rho.max():.3f}], "
          f"m in [{m.min():.3f}, {m.max():.3f}], max E_con {res.series.max():.1e}")

# kappa -> 0 with dt = dx reproduces the relaxation scheme step by step
grid = Grid1D(50, 0.0, 1.0)
rho = 1 + 0.2 * np.sin(2 * np.pi * grid.centers)
m = np.full(50, 0.1)
s = broadwell.from_moments(grid, rho, m, broadwell.equilibrium_z(rho, m), 1e-14)
a = broadwell.broadwell_dirk_step(s, implicit_euler_table(), grid.dx, "lagrange0")
b = broadwell.relaxation_limit_step(s)
gap = max(float(np.max(np.abs(p - q))) for p, q in zip(broadwell.moments(a), broadwell.moments(b)))
print(f"stiff limit vs relaxation scheme: max gap {gap:.1e}")
