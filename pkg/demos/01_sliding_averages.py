"""Conservative sliding averages on a periodic grid.

Shift a set of cell averages by a fraction of a cell, check that the total
is unchanged for every basic reconstruction, then measure the order of
accuracy against exact sliding averages of a sine.
"""

import numpy as np

from slrecon import Reconstruction
from slrecon.harness import experiments as ex
from slrecon.harness import initdata
from slrecon.harness.config import RunConfig

# cell averages of 4 + sin(2 pi x) + cos(2 pi x) on [-1, 1]
n = 20
x = -1 + (np.arange(n) + 0.5) * 2 / n
u = initdata.ubar1(x)

print("shifted sums, theta = 0.37")
for kind in ("lagrange2", "cweno23", "cweno35", "pfc"):
    q = Reconstruction(kind).shift(u, 2 / n, 0.37 * 2 / n)
    print(f"  {kind:10s} sum change {abs(q.sum() - u.sum()) / u.sum():.2e}")

# the same check over a dense theta grid, as a relative conservation error
for f in ("u1", "u2"):
    rep = ex.run_conservation_sweep(RunConfig("recon-sweep", n=(20,), init=f, epsilon=1.0))
    print(f"Err over 1000 shifts, {f}: {rep.err:.4e}")

# empirical orders against exact sliding averages of sin(2 pi x)
for kind in ("cweno23", "cweno35"):
    rep = ex.run_recon_convergence(RunConfig("recon-convergence", n=(40, 80, 160, 320), recon=kind))
    print(f"{kind}: errors {np.array2string(rep.errors, precision=2)}, orders {np.round(rep.orders, 2)}")
