"""
An independent check by brute force
===================================

Discretise the per-mode quadratic forms on a log-uniform grid, clamp F and F'
at both ends, and take the smallest generalised eigenvalue. That is the
Rayleigh-quotient minimum over functions supported in [r_min, r_max]. It sits
above the sharp constant and comes down as the domain widens.

The bias is a property of the truncated problem, not of the grid. For n = 5,
gamma = 0, j = 0 the substitution F = r^{-1/2} G(log r) turns the Rellich
quotient into (int G''^2 + 6.5 G'^2 + 25/16 G^2) / int G^2, so any function
living on a log-width W has quotient at least 25/16 + 6.5 (pi/W)^2.
"""

import math

from rellich_lab.constants import Params
from rellich_lab.oracle import converge_study

p = Params(5, 0)
domains = [(1e-1, 1e1), (1e-3, 1e3), (1e-4, 1e4), (1e-10, 1e10)]
rows = converge_study(p, 0, "rellich", domains, [1000, 2000, 4000])
print("  domain            points  mu_min     bound    gap to 25/16")
for row in rows:
    W = math.log(row["r_max"] / row["r_min"])
    bound = 25 / 16 + 6.5 * (math.pi / W) ** 2
    print(f"  [{row['r_min']:.0e},{row['r_max']:.0e}]  {row['points']:5d}  {row['mu_min']:.6f}  "
          f"{bound:.6f}  {row['relative_gap']:+.2%}")

print("\nOther modes on [1e-4, 1e4], 2000 points:")
for n, g, j in [(3, 0, 1), (4, 0, 1), (7, 2, 0), (3, -1, 2)]:
    for q in ("hardy-rellich", "rellich"):
        (row,) = converge_study(Params(n, g), j, q, [(1e-4, 1e4)], [2000])
        print(f"  ({n},{g},{j}) {q:13s} mu={row['mu_min']:.5f}  theory={row['theoretical']:.5f}  "
              f"gap {row['relative_gap']:+.2%}  residual {row['residual']:.1e}")
