"""
Sharp constants across dimensions and weights
=============================================

The Hardy-Rellich constant A_{n,gamma} is the minimum over spherical modes j
of a rational function of the eigenvalue lambda_j = j(j+n-2). Which mode wins
depends on (n, gamma). This script tabulates the constants and the winning mode.
"""

from rellich_lab import constants as C
from rellich_lab.constants import Params

# Unweighted case. Low dimensions are special: the constant mode is not the minimiser.
print(" n   hardy      rellich    hardy-rellich  argmin j")
for n in range(2, 11):
    p = Params(n, 0)
    hr = C.hardy_rellich_constant(p)
    print(f"{n:2d}  {C.hardy_constant(p):9.4f}  {C.rellich_constant(p).value:9.4f}  "
          f"{hr.value:12.6f}   {hr.argmin}")

# Per-mode values for n = 3: mode 1 beats the constant mode, giving 25/36.
p = Params(3, 0)
print("\nn = 3, gamma = 0, per-mode alpha_j:")
for j in range(5):
    print(f"  j={j}: {C.hardy_rellich_alpha(p, j):.6f}")

# Turning on the weight moves the minimising mode around.
print("\nargmin j of the Hardy-Rellich quotient, n = 5:")
print("  gamma:", " ".join(f"{g:5.1f}" for g in range(-4, 11, 2)))
print("  j    :", " ".join(f"{C.hardy_rellich_constant(Params(5, g)).argmin:5d}" for g in range(-4, 11, 2)))

# Schmincke-type family: the admissible range of s in both variants.
print("\nSchmincke ranges (s_min):")
for n, g in [(3, 0), (4, 0), (5, 0), (6, 2)]:
    p = Params(n, g)
    s2 = C.schmincke_range(p, "sec2").s_min + 0.0  # print -0 as 0
    s3 = C.schmincke_range(p, "sec3")
    print(f"  (n,gamma)=({n},{g}): sec2 {s2:7.3f}   sec3 {s3.s_min:7.3f} (case {s3.case})")

# n = 3 is improved further by a dedicated parameter chain; K(s) interpolates
# between 0 at s = -25/36 and the Rellich constant 9/16 at s = 0.
chain = C.n3_special_chain()
print(f"\nn = 3 chain: s(alpha_hat_+) = {chain.s_at_alpha_hat_plus:.12f} (-25/36 = {-25 / 36:.12f})")
for s in (-25 / 36, -0.6, -0.5, 0.0, 1.0):
    print(f"  K({s:+.4f}) = {C.k3(s):.6f}")
