"""Closed-form and scan-based constants for the weighted Hardy, Rellich,
Hardy-Rellich and Schmincke-type inequalities with weight |x|^gamma."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedCaseError
from .spectra import eigenvalue

LEMMA410_JMAX = 64


@dataclass(frozen=True)
class Params:
    n: int
    gamma: float

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class MinimizerResult:
    value: float
    argmin: int
    scan_bound: int


@dataclass(frozen=True)
class Thm21Coefficients:
    grad: float
    radial: float
    pot: float
    cauchy_valid: bool


@dataclass(frozen=True)
class Thm31Coefficients:
    sph_half: float
    sph_half_dr: float
    sph_full: float


@dataclass(frozen=True)
class SchminckeRange:
    s_min: float
    case: str


@dataclass(frozen=True)
class N3Chain:
    A: float
    B_plus: float
    B_minus: float
    eps_plus: float
    eps_minus: float
    alpha_hat_plus: float
    alpha_hat_minus: float
    alpha_plus: float
    s_at_alpha_hat_plus: float
    discriminant: float
    residual: float


@dataclass(frozen=True)
class SuperiorityFlags:
    n_gt: bool
    positive_product: bool


# --- Hardy -------------------------------------------------------------------

def hardy_constant(p: Params) -> float:
    return ((p.n - 2 + p.gamma) / 2.0) ** 2


# --- Rellich -----------------------------------------------------------------

def rellich_shift(p: Params) -> float:
    """(n-2)^2/4 - (gamma-2)^2/4, the shift added to each sphere eigenvalue."""
    return ((p.n - 2) ** 2 - (p.gamma - 2) ** 2) / 4.0


def rellich_constant(p: Params) -> MinimizerResult:
    """min_j (lambda_j + c)^2, scanned until lambda_j passes max(0, -c)."""
    c = rellich_shift(p)
    threshold = max(0.0, -c)
    best, best_j, j = math.inf, 0, 0
    while True:
        lam = eigenvalue(p.n, j)
        val = (lam + c) ** 2
        if val < best:
            best, best_j = val, j
        if lam >= threshold:
            return MinimizerResult(best, best_j, j)
        j += 1


# --- Hardy-Rellich -----------------------------------------------------------

def _q_d(p: Params):
    q = (p.n + p.gamma - 4) * (p.n - p.gamma) / 4.0
    d = (p.n + p.gamma - 4) ** 2 / 4.0
    return q, d


def hardy_rellich_alpha(p: Params, j: int) -> float:
    """Per-mode Hardy-Rellich constant for spherical degree j."""
    if j == 0:
        return (p.n - p.gamma) ** 2 / 4.0
    lam = eigenvalue(p.n, j)
    q, d = _q_d(p)
    return (q + lam) ** 2 / (d + lam)


def hardy_rellich_constant(p: Params) -> MinimizerResult:
    """min_j alpha_j with a certified stopping index.

    For j >= 1 the sign of d(alpha)/d(lambda) is that of (q+lambda)(lambda+2d-q),
    so alpha_j is nondecreasing once lambda_j >= max(1, -q, q-2d).
    """
    q, d = _q_d(p)
    threshold = max(1.0, -q, q - 2.0 * d)
    best, best_j = hardy_rellich_alpha(p, 0), 0
    j = 1
    while True:
        val = hardy_rellich_alpha(p, j)
        if val < best:
            best, best_j = val, j
        if eigenvalue(p.n, j) >= threshold:
            return MinimizerResult(best, best_j, j)
        j += 1


def lemma49_condition(p: Params, j: int) -> bool:
    """The sufficient condition for alpha_j <= alpha_{j+1}, as stated in the source."""
    if j < 1:
        raise DomainError("condition is stated for j >= 1")
    g = p.gamma
    if -8 * j + 2 <= g <= 2:
        return True
    disc = g * g / 4 + (2 * j - 1) * g - 4 * j + 1
    root = math.sqrt(max(disc, 0.0))
    centre = -2 * (g - 3 + j)
    return p.n >= centre + 2 * root or p.n <= centre - 2 * root


def lemma410_bound(p: Params) -> int:
    """Smallest j0 <= 64 past which alpha_j is nondecreasing.

    The stated condition only controls the factor (lambda+2d-q) of the
    derivative; the factor (q+lambda) must also be nonnegative, so both are
    required here.
    """
    q, _ = _q_d(p)
    ok = [lemma49_condition(p, j) and q + eigenvalue(p.n, j) >= 0 for j in range(1, LEMMA410_JMAX + 1)]
    j0 = None
    for j in range(LEMMA410_JMAX, 0, -1):
        if not ok[j - 1]:
            break
        j0 = j
    if j0 is None:
        raise UnsupportedCaseError(f"no certified tail start j0 <= {LEMMA410_JMAX} for {p}")
    return j0


# --- coefficient families ----------------------------------------------------

def thm21_coefficients(p: Params, alpha: float, beta: float) -> Thm21Coefficients:
    n, g = p.n, p.gamma
    return Thm21Coefficients(
        grad=alpha * (g + n - 4) - 2 * beta,
        radial=-alpha * (alpha - 4 + 2 * g),
        pot=beta * ((n - 4) * (alpha - 2) - beta + g * (n + alpha + g - 6)),
        cauchy_valid=alpha * (alpha - 4 + 2 * g) >= 0,
    )


def thm31_coefficients(p: Params, alpha: float, beta: float, tau: float) -> Thm31Coefficients:
    n, g = p.n, p.gamma
    return Thm31Coefficients(
        sph_half=-tau * ((g + n - 4) * (2 - alpha - g) + 2 * beta),
        sph_half_dr=-2.0 * tau,
        sph_full=-tau * (tau + 2),
    )


def lemma313_coefficient(p: Params, alpha: float, beta: float, tau: float) -> float:
    n, g = p.n, p.gamma
    return -tau * (2 * beta + (g + n - 4) * (n / 2 - g / 2 - alpha))


def lemma314_coefficient(p: Params, alpha: float, beta: float, tau: float, *, check: bool = True) -> float:
    if check and not -2.0 < tau < 0.0:
        raise DomainError(f"tau must lie in (-2, 0), got {tau!r}")
    n, g = p.n, p.gamma
    return -tau * (2 * beta + (g + n - 4) * (n / 2 - g / 2 - alpha) + (tau + 2) * (n - 1))


def optimal_alphas(p: Params):
    """Roots alpha_- <= alpha_+ that annihilate the gradient term of the
    one-parameter family beta = alpha(n - alpha - gamma)/2."""
    half = math.sqrt(((p.gamma - 2) ** 2 + (p.n - 2) ** 2) / 2.0)
    return 2 - p.gamma - half, 2 - p.gamma + half


def cor39_sph_half(p: Params, tau: float) -> float:
    """Coefficient of the half-order spherical term once the gradient and
    radial terms are merged at the optimal alpha."""
    n, g = p.n, p.gamma
    return 0.5 * (tau * (g + n - 4) ** 2 + (n - 2) ** 2 - (g - 2) ** 2)


# --- Schmincke ---------------------------------------------------------------

def schmincke_range(p: Params, variant: str) -> SchminckeRange:
    n, g = p.n, p.gamma
    base = -0.5 * ((n - 2) ** 2 - (g - 2) ** 2)
    if variant == "sec2":
        return SchminckeRange(base, "sec2")
    if variant != "sec3":
        raise DomainError(f"unknown Schmincke variant {variant!r}")
    if (g - 2) ** 2 <= n - 1:
        return SchminckeRange(-0.5 * ((n - 2) ** 2 + (g - 2) ** 2), "i")
    return SchminckeRange(base + 1 - n, "ii")


def schmincke_rhs_constant(p: Params, s: float) -> float:
    n, g = p.n, p.gamma
    return ((g + n - 4) / 4.0) ** 2 * ((g - n) ** 2 + 4 * s)


def k3(s: float) -> float:
    """Potential constant for n = 3, gamma = 0 as a function of s >= -25/36."""
    if s < -25.0 / 36.0:
        raise DomainError(f"s must be >= -25/36, got {s!r}")
    if s >= -0.5:
        return (4 * s + 9) / 16.0
    return (4 * s + 25.0 / 9.0) / 16.0


def n3_s_of_alpha(alpha: float) -> float:
    return alpha * alpha - 4 * alpha + 1.5 + (2.0 / 3.0) * math.sqrt(3.5)


def n3_special_chain() -> N3Chain:
    """Parameter chain behind the n = 3, gamma = 0 improvement."""
    r72 = math.sqrt(3.5)
    A = -0.5
    B_plus, B_minus = 0.75 + r72 / 3, 0.75 - r72 / 3
    eps_plus, eps_minus = r72 / 6, -r72 / 6
    inner = 65.0 / 9.0 - (8.0 / 3.0) * r72
    ah_plus, ah_minus = 2 + 0.5 * math.sqrt(inner), 2 - 0.5 * math.sqrt(inner)
    B, e = B_plus, eps_plus
    disc = ((2 * A + 1) ** 2 * (1 + e) ** 2 - 8 * (2 * A + 1) * (1 + e)
            - (8 * B - 6) * (1 + e) + 8 * e * e + 8)
    # larger root of the constraint quadratic, written with (A, B, eps)
    root_arg = (2 * A + 1) ** 2 * (1 + e) ** 2 - 2 * (8 * A + 4 * B + 1) * (1 + e) + 8 * e * e + 8
    alpha_plus = 0.5 * (4 - (2 * A + 1) * (1 + e) + math.sqrt(root_arg))
    residual = 8 * e * e - (8 * B - 6) * e + 7.0 / 9.0
    return N3Chain(A, B_plus, B_minus, eps_plus, eps_minus, ah_plus, ah_minus,
                   alpha_plus, n3_s_of_alpha(ah_plus), disc, residual)


# --- helpers -----------------------------------------------------------------

def superiority_predicates(p: Params) -> SuperiorityFlags:
    n, g = p.n, p.gamma
    return SuperiorityFlags(
        n_gt=(n - 8) * (n - 4) > g * (g - 12),
        positive_product=(g + n - 4) * (3 * g + n - 8) >= 0,
    )


def remark_a2_monotone(A: float, B: float, C: float, D: float, a: float) -> bool:
    """Sufficient condition for t -> (At+B)/(Ct+D) to be nondecreasing on t >= a."""
    return A > 0 and C > 0 and D > 0 and a > 0 and A * D - B * C >= 0


def remark_a2_ratio(A: float, B: float, C: float, D: float, a: float, t: float) -> float:
    """(At+B)/(Ct+D) for t >= a; its infimum over [a, inf) is the value at a."""
    if not remark_a2_monotone(A, B, C, D, a):
        raise DomainError("need A, C, D, a > 0 and AD - BC >= 0")
    if t < a:
        raise DomainError(f"t = {t} lies below a = {a}")
    return (A * t + B) / (C * t + D)


def remark_a2_polynomial(n: int, gamma: float) -> float:
    return 5 * gamma ** 2 + (2 * n - 24) * gamma + n ** 2 - 8 * n + 32


def lemma_a1_constants(gamma: float):
    """One-dimensional Rellich and Hardy constants on (0, inf) with weight r^gamma."""
    return (1 - gamma) ** 2 * (3 - gamma) ** 2 / 16.0, (1 - gamma) ** 2 / 4.0
