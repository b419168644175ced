"""
Checking inequalities on concrete functions
===========================================

Each inequality is evaluated by reducing to radial integrals mode by mode.
A margin lhs - rhs >= 0 means the inequality holds for that function; the
ratio lhs/rhs shows how far the function is from being extremal.
"""

from rellich_lab import functionals as fn
from rellich_lab.constants import Params
from rellich_lab.profiles import ModeFunction, MultiModeFunction, random_profile, smooth_bump

p = Params(5, 0)
f = MultiModeFunction((ModeFunction(0, smooth_bump(1, 3)),
                       ModeFunction(2, random_profile(4, 0.5, 2.5, 4))))

print("ineq      lhs          rhs          ratio    holds")
for ineq in ("3.44", "3.69a", "3.59a", "2.11", "2.16", "2.35"):
    rep = fn.verify(ineq, p, f)
    ratio = f"{rep.ratio:8.3f}" if rep.ratio is not None else "     n/a"
    print(f"{ineq:6s}  {rep.lhs:11.5g}  {rep.rhs:11.5g}  {ratio}  {rep.holds()}")

# The three-parameter family has a sum-of-squares structure: its margin is
# exactly the weighted square of a first-order operator applied to f.
F = random_profile(11, 0.4, 2.0, 5)
rep = fn.verify("3.1", p, ModeFunction(3, F), alpha=1.3, beta=-0.7, tau=-0.4)
square = fn.factorization_square(F, 3, p, 1.3, -0.7, -0.4)
print(f"\nfamily margin {rep.margin:.12g}  vs  weighted square {square:.12g}")

# Identities behind the reduction hold to rounding.
print(f"expansion identity residual: {fn.identity_363a_residual(F, 3, p):.2e}")
for lemma in ("L3.5", "L3.6", "L3.7", "L3.8"):
    print(f"{lemma} residual: {fn.spherical_identity_residual(lemma, F, p):.2e}")

# Out-of-range parameters are flagged, not rejected, so a violation can be seen.
rep = fn.verify("3.115", Params(3, 0), ModeFunction(1, smooth_bump(1, 3)), s=-1000)
print(f"\ns=-1000 (outside the admissible range): preconditions_met={rep.preconditions_met}, "
      f"margin={rep.margin:.4g}")
