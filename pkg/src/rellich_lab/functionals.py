"""Weighted integral functionals of separable test functions, reduced to
one-dimensional radial integrals, and the inequality checks built on them.

For f = F(r) phi_j(theta) with phi_j a unit-normalised harmonic of degree j
and lambda = j(j+n-2), every n-dimensional functional is a combination of

    M0    = int r^{gamma+n-5} F^2        M1    = int r^{gamma+n-3} F'^2
    P2    = int r^{gamma+n-3} F^2        M1hi  = int r^{gamma+n-1} F'^2
    M2    = int r^{gamma+n-1} F''^2
    L     = int r^{gamma+n-1} (-F'' - (n-1) F'/r + lambda F/r^2)^2

Radial integrals are evaluated in the variable s = log r.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import constants as C
from .errors import DegenerateInputError, DomainError, UnsupportedCaseError
from .profiles import (LogPlateau, ModeFunction, PowerTimes, RadialProfile, TrialFunction,
                       as_multimode, nested_epsilon_schedule, trial_mode)
from .quadrature import QuadratureConfig, integrate
from .spectra import eigenvalue, iterated_exp, log_refinement_weight

EXCLUDED_A_SHARPNESS = {(2, 2.0), (3, 1.0)}
SWEEP_CONFIG = QuadratureConfig(rel_tol=1e-8)


# --- radial quadrature -------------------------------------------------------

def radial_integral(F: RadialProfile, integrand, cfg: QuadratureConfig | None = None) -> float:
    """int_0^inf integrand(r, F, F', F'') dr over the support of F."""
    cuts = [math.log(x) for x in F.breakpoints()]

    def g(s):
        r = np.exp(s)
        F0, F1, F2 = F.derivatives(r)
        return integrand(r, F0, F1, F2) * r

    return integrate(g, cuts[0], cuts[-1], cfg, knots=cuts[1:-1]).value


def weighted_square(F: RadialProfile, exponent: float, order: int, cfg=None) -> float:
    """int r^exponent (F^(order))^2 dr."""
    return radial_integral(F, lambda r, *d: r ** exponent * d[order] ** 2, cfg)


def laplacian_square(F: RadialProfile, j: int, p: C.Params, cfg=None) -> float:
    lam = eigenvalue(p.n, j)
    n, g = p.n, p.gamma

    def h(r, F0, F1, F2):
        return r ** (g + n - 1) * (-F2 - (n - 1) * F1 / r + lam * F0 / r ** 2) ** 2

    return radial_integral(F, h, cfg)


@dataclass(frozen=True)
class ModeIntegrals:
    j: int
    lam: float
    m0: float
    m1: float
    m1_hi: float
    m2: float
    lap: float
    pot_hi: float


def mode_integrals(F: RadialProfile, j: int, p: C.Params, cfg=None) -> ModeIntegrals:
    n, g = p.n, p.gamma
    return ModeIntegrals(
        j=j,
        lam=eigenvalue(n, j),
        m0=weighted_square(F, g + n - 5, 0, cfg),
        m1=weighted_square(F, g + n - 3, 1, cfg),
        m1_hi=weighted_square(F, g + n - 1, 1, cfg),
        m2=weighted_square(F, g + n - 1, 2, cfg),
        lap=laplacian_square(F, j, p, cfg),
        pot_hi=weighted_square(F, g + n - 3, 0, cfg),
    )


@dataclass(frozen=True)
class LogWeightParams:
    N: int
    eta: float
    R: float

    def __post_init__(self):
        if not 1 <= self.N <= 4:
            raise DomainError(f"N must lie in 1..4, got {self.N!r}")
        if not self.R > 0:
            raise DomainError("R must be positive")
        if self.eta < iterated_exp(self.N) * self.R * (1 - 1e-15):
            raise DomainError(f"eta = {self.eta} is below e_N R = {iterated_exp(self.N) * self.R}")

    @classmethod
    def auto(cls, N: int, R: float = 1.0):
        return cls(N, iterated_exp(N) * R, R)


def _check_ball(F: RadialProfile, lw: LogWeightParams):
    a, b = F.support
    if not (0 < a and b <= lw.R):
        raise DomainError(f"profile support {F.support} is not inside the ball (0, {lw.R})")


def logref_integrals(F: RadialProfile, p: C.Params, lw: LogWeightParams, cfg=None):
    """(int r^{g+n-5} W F^2, int r^{g+n-3} W F'^2) with the log refinement weight W."""
    _check_ball(F, lw)
    n, g = p.n, p.gamma

    def w(r):
        return log_refinement_weight(r, lw.N, lw.eta)

    pot = radial_integral(F, lambda r, F0, F1, F2: r ** (g + n - 5) * w(r) * F0 ** 2, cfg)
    grad = radial_integral(F, lambda r, F0, F1, F2: r ** (g + n - 3) * w(r) * F1 ** 2, cfg)
    return pot, grad


# --- assembled functionals ---------------------------------------------------

@dataclass(frozen=True)
class FunctionalSet:
    lap2: float           # int |x|^g |Laplacian f|^2
    grad2: float          # int |x|^{g-2} |grad f|^2
    grad2_hi: float       # int |x|^g |grad f|^2
    radial_dir: float     # int |x|^{g-4} |x . grad f|^2
    radial_dir_hi: float  # int |x|^g |d f / d r|^2
    pot: float            # int |x|^{g-4} f^2
    pot_hi: float         # int |x|^{g-2} f^2
    sph_half: float       # int r^{g-4} |(-Delta_S)^{1/2} f|^2
    sph_half_dr: float    # int r^{g-2} |(-Delta_S)^{1/2} df/dr|^2
    sph_full: float       # int r^{g-4} |Delta_S f|^2
    logref_pot: float | None = None   # int |x|^{g-4} W f^2
    logref_grad: float | None = None  # int |x|^{g-2} W |grad f|^2
    logref_sph: float | None = None   # int |x|^{g-4} W |grad_S f|^2
    modes: tuple = field(default=(), compare=False, repr=False)


def assemble(f, p: C.Params, cfg=None, log: LogWeightParams | None = None) -> FunctionalSet:
    mf = as_multimode(f)
    per = [mode_integrals(m.profile, m.j, p, cfg) for m in mf.modes]
    s = math.fsum
    extra = {}
    if log is not None:
        lr = [logref_integrals(m.profile, p, log, cfg) for m in mf.modes]
        extra = dict(
            logref_pot=s(x[0] for x in lr),
            logref_grad=s(x[1] + mi.lam * x[0] for x, mi in zip(lr, per)),
            logref_sph=s(mi.lam * x[0] for x, mi in zip(lr, per)),
        )
    return FunctionalSet(
        lap2=s(m.lap for m in per),
        grad2=s(m.m1 + m.lam * m.m0 for m in per),
        grad2_hi=s(m.m1_hi + m.lam * m.pot_hi for m in per),
        radial_dir=s(m.m1 for m in per),
        radial_dir_hi=s(m.m1_hi for m in per),
        pot=s(m.m0 for m in per),
        pot_hi=s(m.pot_hi for m in per),
        sph_half=s(m.lam * m.m0 for m in per),
        sph_half_dr=s(m.lam * m.m1 for m in per),
        sph_full=s(m.lam ** 2 * m.m0 for m in per),
        modes=tuple(per),
        **extra,
    )


# --- inequality registry -----------------------------------------------------

@dataclass(frozen=True)
class InequalityReport:
    ineq_id: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    rel_margin: float
    ratio: float | None
    constant_used: float | None
    preconditions_met: bool
    quadrature_tol: float

    def holds(self, tol: float = 1e-10) -> bool:
        return self.margin >= -tol * abs(self.lhs)

    def to_dict(self) -> dict:
        return asdict(self)


def _need(prm, *names):
    missing = [k for k in names if prm.get(k) is None]
    if missing:
        raise ValueError(f"missing parameter(s): {', '.join(missing)}")
    return [float(prm[k]) for k in names]


def _thm21_rhs(p, fs, alpha, beta):
    c = C.thm21_coefficients(p, alpha, beta)
    return c.grad * fs.grad2 + c.radial * fs.radial_dir + c.pot * fs.pot, c


def _thm22_rhs(p, fs, alpha, beta):
    c = C.thm21_coefficients(p, alpha, beta)
    return (c.grad + c.radial) * fs.grad2 + c.pot * fs.pot, c


def _sph_terms(p, fs, alpha, beta, tau):
    t = C.thm31_coefficients(p, alpha, beta, tau)
    return t.sph_half * fs.sph_half + t.sph_half_dr * fs.sph_half_dr + t.sph_full * fs.sph_full


def _rhs_2_1(p, fs, prm):
    a, b = _need(prm, "alpha", "beta")
    return fs.lap2, _thm21_rhs(p, fs, a, b)[0], True, None


def _rhs_2_2(p, fs, prm):
    a, b = _need(prm, "alpha", "beta")
    rhs, c = _thm22_rhs(p, fs, a, b)
    return fs.lap2, rhs, c.cauchy_valid, None


def _range_211(n, g):
    return (n >= g >= 2) or (n >= 4 - g and g <= 2)


def _rhs_2_11(p, fs, prm):
    n, g = p.n, p.gamma
    k = ((n - g) * (g + n - 4) / 4.0) ** 2
    return fs.lap2, k * fs.pot, _range_211(n, g), k


def _rhs_2_16(p, fs, prm):
    n, g = p.n, p.gamma
    ok = (n >= g >= 2) or (n >= 8 - 3 * g and g <= 2)
    k = ((n - g) / 2.0) ** 2
    return fs.lap2, k * fs.grad2, ok, k


def _rhs_2_17(p, fs, prm):
    n, g = p.n, p.gamma
    if prm.get("gamma_abs"):
        k = 4 * (n - 4 - abs(g))
        return fs.lap2, k * fs.grad2, n >= 4 + abs(g), k
    k = 4 * (n - 4 - g)
    return fs.lap2, k * fs.grad2, (n >= 4 + g and g >= 0), k


def _rhs_2_18(p, fs, prm):
    n, g = p.n, p.gamma
    k = (4 - 2 * g) * (g + n - 4)
    return fs.lap2, k * fs.grad2, (n >= 4 - g and g <= 2), k


def _rhs_2_19(p, fs, prm):
    n, g = p.n, p.gamma
    k = ((n - g) / 2.0) ** 2
    return fs.lap2, k * fs.radial_dir, _range_211(n, g), k


def _schmincke(variant):
    def rhs(p, fs, prm):
        (s,) = _need(prm, "s")
        rng = C.schmincke_range(p, variant)
        k = C.schmincke_rhs_constant(p, s)
        return fs.lap2, -s * fs.grad2 + k * fs.pot, s >= rng.s_min, k
    return rhs


def _rhs_2_26(p, fs, prm):
    n, g = p.n, p.gamma
    ok = (g >= n and g >= 2) or (8 - 3 * g >= n and g <= 2)
    k = 0.5 * ((n - 2) ** 2 - (g - 2) ** 2)
    return fs.lap2, k * fs.grad2, ok, k


def _rhs_2_35(p, fs, prm):
    k = C.hardy_constant(p)
    return fs.grad2_hi, k * fs.pot_hi, True, k


def _rhs_2_43(p, fs, prm):
    k = C.hardy_constant(p)
    return fs.radial_dir_hi, k * fs.pot_hi, True, k


def _rhs_3_1(p, fs, prm):
    a, b, t = _need(prm, "alpha", "beta", "tau")
    return fs.lap2, _thm21_rhs(p, fs, a, b)[0] + _sph_terms(p, fs, a, b, t), True, None


def _rhs_3_2(p, fs, prm):
    a, b, t = _need(prm, "alpha", "beta", "tau")
    rhs, c = _thm22_rhs(p, fs, a, b)
    return fs.lap2, rhs + _sph_terms(p, fs, a, b, t), c.cauchy_valid, None


def _rhs_3_38(p, fs, prm):
    (t,) = _need(prm, "tau")
    c = C.rellich_shift(p)
    rhs = (c * c * fs.pot + C.cor39_sph_half(p, t) * fs.sph_half
           - 2 * t * fs.sph_half_dr - t * (t + 2) * fs.sph_full)
    return fs.lap2, rhs, True, c * c


def _rhs_3_44(p, fs, prm):
    k = C.rellich_constant(p).value
    return fs.lap2, k * fs.pot, True, k


def _rhs_3_49(p, fs, prm):
    a, b, t = _need(prm, "alpha", "beta", "tau")
    rhs = (_thm21_rhs(p, fs, a, b)[0] + C.lemma313_coefficient(p, a, b, t) * fs.sph_half
           - t * (t + 2) * fs.sph_full)
    return fs.lap2, rhs, t < 0, None


def _rhs_3_51(p, fs, prm):
    a, b, t = _need(prm, "alpha", "beta", "tau")
    rhs = _thm21_rhs(p, fs, a, b)[0] + C.lemma314_coefficient(p, a, b, t, check=False) * fs.sph_half
    return fs.lap2, rhs, -2 < t < 0, None


def _rhs_3_59a(p, fs, prm):
    rhs = math.fsum(C.hardy_rellich_alpha(p, m.j) * (m.m1 + m.lam * m.m0) for m in fs.modes)
    return fs.lap2, rhs, True, None


def _rhs_3_69a(p, fs, prm):
    k = C.hardy_rellich_constant(p).value
    return fs.lap2, k * fs.grad2, True, k


def _is_n3_g0(p):
    return p.n == 3 and p.gamma == 0.0


def _rhs_3_100(p, fs, prm):
    (s,) = _need(prm, "s")
    k = (4 * s + 25.0 / 9.0) / 16.0
    return fs.lap2, -s * fs.grad2 + k * fs.pot, _is_n3_g0(p) and s >= -25.0 / 36.0, k


def _rhs_3_115(p, fs, prm):
    (s,) = _need(prm, "s")
    ok = _is_n3_g0(p) and s >= -25.0 / 36.0
    k = C.k3(s) if s >= -25.0 / 36.0 else (4 * s + 25.0 / 9.0) / 16.0
    return fs.lap2, -s * fs.grad2 + k * fs.pot, ok, k


def _rhs_3_48a(p, fs, prm):
    n, g = p.n, p.gamma
    k = ((n - g) ** 2 + (n + g - 4) ** 2) / 16.0
    c = C.rellich_constant(p).value
    return fs.lap2, c * fs.pot + k * fs.logref_pot, True, c


def _rhs_4_31(p, fs, prm):
    k = C.hardy_rellich_constant(p).value
    rhs = k * fs.grad2 + 0.25 * fs.logref_grad + 0.25 * fs.logref_sph
    return fs.lap2, rhs, True, k


INEQUALITIES = {
    "2.1": _rhs_2_1, "2.2": _rhs_2_2, "2.11": _rhs_2_11, "2.16": _rhs_2_16,
    "2.17": _rhs_2_17, "2.18": _rhs_2_18, "2.19": _rhs_2_19,
    "2.24": _schmincke("sec2"), "2.26": _rhs_2_26, "2.35": _rhs_2_35, "2.43": _rhs_2_43,
    "3.1": _rhs_3_1, "3.2": _rhs_3_2, "3.38": _rhs_3_38, "3.44": _rhs_3_44,
    "3.48a": _rhs_3_48a, "3.49": _rhs_3_49, "3.51": _rhs_3_51, "3.59a": _rhs_3_59a,
    "3.69a": _rhs_3_69a, "3.89": _schmincke("sec3"), "3.100": _rhs_3_100,
    "3.115": _rhs_3_115, "4.31": _rhs_4_31,
}
ONE_DIMENSIONAL = ("3.49a", "3.50a")
LOG_REFINED = ("3.48a", "4.31")
ALL_IDS = tuple(INEQUALITIES) + ONE_DIMENSIONAL


def _report(ineq_id, prm, lhs, rhs, ok, const, cfg):
    margin = lhs - rhs
    rel = margin / abs(lhs) if lhs != 0 else (0.0 if margin == 0 else math.copysign(math.inf, margin))
    clean = {k: v for k, v in prm.items() if v is not None}
    ratio = lhs / rhs if rhs > 0 else None
    tol = (cfg or QuadratureConfig()).rel_tol
    return InequalityReport(ineq_id, clean, lhs, rhs, margin, rel, ratio, const, bool(ok), tol)


def verify(ineq_id: str, p: C.Params, f, cfg: QuadratureConfig | None = None, **prm) -> InequalityReport:
    """Evaluate both sides of inequality `ineq_id` on the test function f.

    Keyword parameters: alpha, beta, tau, s (coefficient families),
    N, eta, R (log refinement; eta defaults to e_N R), gamma_abs (2.17 variant).
    """
    mf = as_multimode(f)
    if ineq_id in ONE_DIMENSIONAL:
        g = p.gamma
        rel_c, hardy_c = C.lemma_a1_constants(g)
        if ineq_id == "3.49a":
            lhs = math.fsum(weighted_square(m.profile, g, 2, cfg) for m in mf.modes)
            rhs = rel_c * math.fsum(weighted_square(m.profile, g - 4, 0, cfg) for m in mf.modes)
        else:
            lhs = math.fsum(weighted_square(m.profile, g, 1, cfg) for m in mf.modes)
            rhs = hardy_c * math.fsum(weighted_square(m.profile, g - 2, 0, cfg) for m in mf.modes)
        return _report(ineq_id, prm, lhs, rhs, True, rel_c if ineq_id == "3.49a" else hardy_c, cfg)
    try:
        rule = INEQUALITIES[ineq_id]
    except KeyError:
        raise UnsupportedCaseError(f"unknown inequality id {ineq_id!r}") from None
    log = None
    if ineq_id in LOG_REFINED:
        N = int(prm.get("N") or 1)
        R = float(prm.get("R") or 1.0)
        eta = prm.get("eta")
        eta = iterated_exp(N) * R if eta is None else float(eta)
        log = LogWeightParams(N, eta, R)
        prm = {**prm, "N": N, "R": R, "eta": eta}
    fs = assemble(mf, p, cfg, log=log)
    lhs, rhs, ok, const = rule(p, fs, prm)
    return _report(ineq_id, prm, lhs, rhs, ok, const, cfg)


# --- identities --------------------------------------------------------------

def identity_363a_residual(F: RadialProfile, j: int, p: C.Params, cfg=None) -> float:
    """Relative gap between L and M2 + c1 M1 + c0 M0 for one mode."""
    mi = mode_integrals(F, j, p, cfg)
    n, g, lam = p.n, p.gamma, mi.lam
    combo = (mi.m2 + (2 * lam + (n - 1) * (1 - g)) * mi.m1
             + (lam ** 2 + lam * (g + n - 4) * (2 - g)) * mi.m0)
    return abs(mi.lap - combo) / max(mi.lap, 1e-300)


def lemma_identity_sides(F: RadialProfile, p: C.Params, cfg=None) -> dict:
    """Left and right sides of the four commutation identities, per unit eigenvalue.

    The left sides are integrated exactly as written (no integration by parts).
    """
    n, g = p.n, p.gamma
    h = g / 2.0

    def l35(r, F0, F1, F2):
        d1 = (h - 2) * r ** (h - 3) * F0 + r ** (h - 2) * F1
        d2 = ((h - 2) * (h - 3) * r ** (h - 4) * F0 + 2 * (h - 2) * r ** (h - 3) * F1
              + r ** (h - 2) * F2)
        return -r ** h * ((n - 1) * r ** (n - 2) * d1 + r ** (n - 1) * d2) * F0

    def l36(r, F0, F1, F2):
        d1 = (h - 2) * r ** (h - 3) * F0 + r ** (h - 2) * F1
        return r ** (h - 1) * d1 * F0 * r ** (n - 1)

    def l37(r, F0, F1, F2):
        return -r ** (g - 2) * ((n - 1) * r ** (n - 2) * F1 + r ** (n - 1) * F2) * F0

    def l38(r, F0, F1, F2):
        return r ** (g + n - 4) * F1 * F0

    m0 = weighted_square(F, g + n - 5, 0, cfg)
    m1 = weighted_square(F, g + n - 3, 1, cfg)
    k5 = 2 * g - g * g / 4 - n * g / 2 + n - 4
    return {
        "3.5": (radial_integral(F, l35, cfg), k5 * m0 + m1, m0),
        "3.6": (radial_integral(F, l36, cfg), -(n / 2.0) * m0, m0),
        "3.7": (radial_integral(F, l37, cfg), -0.5 * (g - 2) * (g + n - 4) * m0 + m1, m0),
        "3.8": (radial_integral(F, l38, cfg), -0.5 * (g + n - 4) * m0, m0),
    }


def lemma_identity_residuals(F: RadialProfile, p: C.Params, cfg=None) -> dict:
    out = {}
    for key, (lhs, rhs, scale) in lemma_identity_sides(F, p, cfg).items():
        out[key] = abs(lhs - rhs) / max(abs(lhs), abs(rhs), scale, 1e-300)
    return out


def factorization_square(F: RadialProfile, j: int, p: C.Params, alpha: float, beta: float,
                         tau: float = 0.0, cfg=None) -> float:
    """int r^{g+n-1} (T F)^2 dr for the per-mode factorisation operator
    T = -F'' - (n-1)F'/r + alpha F'/r + beta F/r^2 + (1+tau) lambda F/r^2."""
    lam = eigenvalue(p.n, j)
    n, g = p.n, p.gamma

    def h(r, F0, F1, F2):
        t = -F2 + (alpha - n + 1) * F1 / r + (beta + (1 + tau) * lam) * F0 / r ** 2
        return r ** (g + n - 1) * t * t

    return radial_integral(F, h, cfg)


# --- quotients and sharpness -------------------------------------------------

@dataclass(frozen=True)
class Quotients:
    rellich_q: float
    hardy_rellich_q: float


def per_mode_quotients(f, p: C.Params, cfg=None) -> Quotients:
    fs = assemble(f, p, cfg)
    if not (fs.pot > 0 and fs.grad2 > 0):
        raise DegenerateInputError("profile has vanishing denominators")
    return Quotients(fs.lap2 / fs.pot, fs.lap2 / fs.grad2)


@dataclass(frozen=True)
class SweepPoint:
    epsilon: float
    rellich_q: float
    hardy_rellich_q: float


@dataclass(frozen=True)
class SweepResult:
    params: C.Params
    j0: int
    R: float
    points: tuple
    rellich_limit: float
    hardy_rellich_limit: float


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RELLICH_LAB_THREADS", "1")))
    except ValueError:
        return 1


def sharpness_sweep(p: C.Params, j0: int, R: float = 1.0, schedule=None, cfg=None,
                    target: str | None = None) -> SweepResult:
    """Quotients of the trial family r^p psi_eps(r) phi_{j0} along a schedule of eps."""
    if target == "A" and (p.n, p.gamma) in EXCLUDED_A_SHARPNESS:
        raise UnsupportedCaseError(f"(n, gamma) = ({p.n}, {p.gamma:g}) is an excluded pair: "
                                   "Hardy-Rellich sharpness is not claimed there")
    schedule = tuple(schedule or nested_epsilon_schedule(0.5, 10))
    cfg = cfg or SWEEP_CONFIG

    def one(eps):
        q = per_mode_quotients(trial_mode(TrialFunction(p, j0, eps, R)), p, cfg)
        return SweepPoint(eps, q.rellich_q, q.hardy_rellich_q)

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            points = tuple(pool.map(one, schedule))
    else:
        points = tuple(one(e) for e in schedule)
    lam = eigenvalue(p.n, j0)
    return SweepResult(p, j0, R, points,
                       rellich_limit=(lam + C.rellich_shift(p)) ** 2,
                       hardy_rellich_limit=C.hardy_rellich_alpha(p, j0))


def log_plateau_trial(p: C.Params, j0: int, half_width: float, step_width: float = 3.0) -> ModeFunction:
    """r^{(4-n-gamma)/2} times a cutoff equal to 1 on [e^-h, e^h] with steps of
    log-width `step_width`; a slower-to-build but faster-converging extremal family."""
    power = (4 - p.n - p.gamma) / 2.0
    base = LogPlateau(math.exp(-half_width), math.exp(half_width), step_width)
    return ModeFunction(j0, PowerTimes(power, base))


def log_plateau_sweep(p: C.Params, j0: int, half_widths=(5, 10, 20, 40, 80),
                      step_width: float = 3.0, cfg=None) -> SweepResult:
    """Quotients of the log-plateau family as the plateau widens; the
    `epsilon` field of each point carries the half-width."""
    pts = []
    for h in half_widths:
        q = per_mode_quotients(log_plateau_trial(p, j0, h, step_width), p, cfg)
        pts.append(SweepPoint(float(h), q.rellich_q, q.hardy_rellich_q))
    lam = eigenvalue(p.n, j0)
    return SweepResult(p, j0, math.nan, tuple(pts),
                       rellich_limit=(lam + C.rellich_shift(p)) ** 2,
                       hardy_rellich_limit=C.hardy_rellich_alpha(p, j0))


def spherical_identity_residual(lemma_id: str, F: RadialProfile, p: C.Params, cfg=None) -> float:
    """Relative residual of one commutation identity ("L3.5" .. "L3.8").

    Per unit eigenvalue, with h = r^{gamma/2-2} F:
      L3.5  -int r^{g/2} (r^{n-1} h')' F dr     = k M0 + M1,  k = 2g - g^2/4 - ng/2 + n - 4
      L3.6   int r^{g/2+n-2} h' F dr            = -(n/2) M0
      L3.7  -int r^{g-2} (r^{n-1} F')' F dr     = -(g-2)(g+n-4)/2 M0 + M1
      L3.8   int r^{g+n-4} F' F dr              = -(g+n-4)/2 M0
    """
    key = lemma_id.removeprefix("L")
    if key not in ("3.5", "3.6", "3.7", "3.8"):
        raise ValueError(f"unknown identity {lemma_id!r}")
    return lemma_identity_residuals(F, p, cfg)[key]
