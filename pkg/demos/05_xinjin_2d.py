"""Four constant states meeting at the origin, transported diagonally.

The run writes the final field as CSV for plotting with any external tool.
"""

import time
from pathlib import Path

from slrecon.harness import experiments as ex
from slrecon.harness.config import RunConfig
from slrecon.harness.io import write_csv

cfg = RunConfig("xinjin2d", n=(48,), cfl=0.2, kappa=1e-4, tfinal=3.0, init="quadrant", boundary="freeflow")
start = time.perf_counter()
res = ex.run_shock(cfg)
u = res.state.u.values
print(f"t = {res.state.t:.2f} after {time.perf_counter() - start:.1f} s, u in [{u.min():.3f}, {u.max():.3f}]")
x, y = res.state.grid.meshgrid()
out = write_csv(Path("slrecon-out") / "quadrant.csv", ["x", "y", "u"], [x, y, u])
print(f"wrote {out}")
