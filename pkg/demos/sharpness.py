"""
Approaching the sharp constants
===============================

The sharp constants are infima that no compactly supported function attains.
Trial functions r^p psi(r) with p at the critical exponent make the quotient
approach the constant as the cutoff psi grows its plateau.

Two cutoff families are compared:

* the eps-family, equal to 1 on [eps R/5, 4R/5] with fixed outer transition;
* a log-plateau family, equal to 1 on [e^-h, e^h] with steps of fixed log-width.

Both decrease toward the limit. The eps-family does so only like 1/ln(1/eps),
because its outer transition costs a fixed amount while the plateau gains
only ln(1/eps). The log-plateau family closes the gap like 1/h.
"""

from rellich_lab import constants as C
from rellich_lab import functionals as fn
from rellich_lab.constants import Params
from rellich_lab.profiles import nested_epsilon_schedule

for n, g in [(5, 0), (3, 0)]:
    p = Params(n, g)
    j0 = C.hardy_rellich_constant(p).argmin
    sw = fn.sharpness_sweep(p, j0, schedule=nested_epsilon_schedule(0.5, 10))
    print(f"(n,gamma)=({n},{g}), j0={j0}: limits HR {sw.hardy_rellich_limit:.4f}, "
          f"Rellich {sw.rellich_limit:.4f}")
    print("   eps        HR quotient   Rellich quotient")
    for pt in sw.points:
        print(f"  {pt.epsilon:9.3e}  {pt.hardy_rellich_q:12.4f}  {pt.rellich_q:14.4f}")

    lp = fn.log_plateau_sweep(p, j0, half_widths=(5, 10, 20, 40, 80))
    print("   half-width HR quotient   Rellich quotient")
    for pt in lp.points:
        print(f"  {pt.epsilon:9.0f}  {pt.hardy_rellich_q:12.4f}  {pt.rellich_q:14.4f}")
    print()
