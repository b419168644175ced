"""Smooth compactly supported radial profiles F(r) on (0, inf).

A profile knows its support, the points where its formula changes (knots),
and returns (F, F', F'') on arrays of radii. Modes pair a profile with a
spherical-harmonic degree j; a test function f(r, theta) = sum_j F_j(r) phi_j(theta)
uses one unit-normalised harmonic per degree.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .constants import Params
from .errors import DomainError

_EDGE = 1e-3  # the smooth step is below exp(-999) this close to its ends


def smooth_step(x):
    """S(x) = s(x)/(s(x)+s(1-x)) with s(x) = exp(-1/x); returns (S, S', S'')."""
    x = np.asarray(x, dtype=float)
    S = np.where(x >= 1.0 - _EDGE, 1.0, 0.0)
    dS = np.zeros_like(x)
    d2S = np.zeros_like(x)
    mid = (x > _EDGE) & (x < 1.0 - _EDGE)
    if np.any(mid):
        t = x[mid]
        u = 1.0 - t
        z = 1.0 / u - 1.0 / t
        s, sc = expit(z), expit(-z)  # sc = 1 - s without cancellation
        y = 1.0 / t ** 2 + 1.0 / u ** 2
        dy = -2.0 / t ** 3 + 2.0 / u ** 3
        s1 = s * sc * y
        S[mid] = s
        dS[mid] = s1
        d2S[mid] = s1 * (sc - s) * y + s * sc * dy
    return S, dS, d2S


class RadialProfile:
    """Base class. Subclasses implement _derivs on the open support."""

    support: tuple
    knots: tuple = ()

    def _derivs(self, r):
        raise NotImplementedError

    def derivatives(self, r):
        r = np.asarray(r, dtype=float)
        a, b = self.support
        out = [np.zeros_like(r) for _ in range(3)]
        inside = (r > a) & (r < b)
        if np.any(inside):
            for o, v in zip(out, self._derivs(r[inside])):
                o[inside] = v
        return tuple(out)

    def __call__(self, r):
        return self.derivatives(r)[0]

    def breakpoints(self):
        a, b = self.support
        return tuple(sorted({a, b, *(k for k in self.knots if a < k < b)}))


class SmoothBump(RadialProfile):
    """exp(-1/(1-t^2)) with t the affine image of (a, b) onto (-1, 1)."""

    def __init__(self, a: float, b: float):
        if not (0.0 < a < b and math.isfinite(b)):
            raise DomainError(f"bump needs 0 < a < b < inf, got ({a}, {b})")
        self.a, self.b = float(a), float(b)
        self.support = (self.a, self.b)

    def _t(self, r):
        k = 2.0 / (self.b - self.a)
        return (2.0 * r - self.a - self.b) / (self.b - self.a), k

    def _phi(self, t):
        """exp(-1/(1-t^2)) and its t-derivatives; zero where it underflows."""
        w = 1.0 - t * t
        phi = np.zeros_like(t)
        d1 = np.zeros_like(t)
        d2 = np.zeros_like(t)
        ok = w > _EDGE
        if np.any(ok):
            tt, ww = t[ok], w[ok]
            e = np.exp(-1.0 / ww)
            g1 = -2.0 * tt / ww ** 2
            g2 = -2.0 * (1.0 + 3.0 * tt * tt) / ww ** 3
            phi[ok] = e
            d1[ok] = e * g1
            d2[ok] = e * (g1 * g1 + g2)
        return phi, d1, d2

    def _derivs(self, r):
        t, k = self._t(r)
        phi, d1, d2 = self._phi(t)
        return phi, k * d1, k * k * d2

    def __repr__(self):
        return f"SmoothBump({self.a!r}, {self.b!r})"


class PolyBump(SmoothBump):
    """A polynomial in t times the smooth bump on (a, b)."""

    def __init__(self, coeffs, a: float, b: float):
        super().__init__(a, b)
        self.poly = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
        self._d1 = self.poly.deriv(1)
        self._d2 = self.poly.deriv(2)

    def _derivs(self, r):
        t, k = self._t(r)
        phi, d1, d2 = self._phi(t)
        P, P1, P2 = self.poly(t), self._d1(t), self._d2(t)
        F = P * phi
        F1 = P1 * phi + P * d1
        F2 = P2 * phi + 2.0 * P1 * d1 + P * d2
        return F, k * F1, k * k * F2

    def __repr__(self):
        return f"PolyBump({self.poly.coef.tolist()!r}, {self.a!r}, {self.b!r})"


@dataclass(frozen=True)
class CutoffSpec:
    epsilon: float
    R: float

    def __post_init__(self):
        if not 0.0 < self.epsilon <= 1.0:
            raise DomainError(f"epsilon must lie in (0, 1], got {self.epsilon!r}")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise DomainError(f"R must be positive and finite, got {self.R!r}")


class Cutoff(RadialProfile):
    """0 near the origin, rising on [eps R/10, eps R/5], 1 up to 4R/5,
    falling on [4R/5, 9R/10], 0 beyond."""

    def __init__(self, spec: CutoffSpec):
        self.spec = spec
        e, R = spec.epsilon, spec.R
        self.support = (e * R / 10, 9 * R / 10)
        self.knots = (e * R / 5, 4 * R / 5)

    def _derivs(self, r):
        e, R = self.spec.epsilon, self.spec.R
        k_in = 10.0 / (e * R)
        k_out = 10.0 / R
        a, a1, a2 = smooth_step((r - e * R / 10) * k_in)
        b, b1, b2 = smooth_step((9 * R / 10 - r) * k_out)
        a1, a2 = a1 * k_in, a2 * k_in ** 2
        b1, b2 = -b1 * k_out, b2 * k_out ** 2
        return a * b, a1 * b + a * b1, a2 * b + 2 * a1 * b1 + a * b2

    def __repr__(self):
        return f"Cutoff({self.spec!r})"


class LogPlateau(RadialProfile):
    """1 on [lo, hi], with smooth steps of log-width `width` on each side."""

    def __init__(self, lo: float, hi: float, width: float = 1.0):
        if not (0.0 < lo < hi and width > 0.0):
            raise DomainError("log plateau needs 0 < lo < hi and width > 0")
        self.lo, self.hi, self.width = float(lo), float(hi), float(width)
        self.support = (lo * math.exp(-width), hi * math.exp(width))
        self.knots = (self.lo, self.hi)

    def _derivs(self, r):
        s = np.log(r)
        w = self.width
        a, a1, a2 = smooth_step((s - math.log(self.lo) + w) / w)
        b, b1, b2 = smooth_step((math.log(self.hi) + w - s) / w)
        a1, a2 = a1 / w, a2 / w ** 2
        b1, b2 = -b1 / w, b2 / w ** 2
        Fs = a1 * b + a * b1
        Fss = a2 * b + 2 * a1 * b1 + a * b2
        return a * b, Fs / r, (Fss - Fs) / r ** 2

    def __repr__(self):
        return f"LogPlateau({self.lo!r}, {self.hi!r}, {self.width!r})"


class PowerTimes(RadialProfile):
    """r^power times another profile."""

    def __init__(self, power: float, base: RadialProfile):
        self.power = float(power)
        self.base = base
        self.support = base.support
        self.knots = base.knots

    def _derivs(self, r):
        B, B1, B2 = self.base._derivs(r)
        p = self.power
        rp = r ** p
        return (rp * B,
                rp * (B1 + p * B / r),
                rp * (B2 + 2 * p * B1 / r + p * (p - 1) * B / r ** 2))

    def __repr__(self):
        return f"PowerTimes({self.power!r}, {self.base!r})"


class Scaled(RadialProfile):
    def __init__(self, factor: float, base: RadialProfile):
        self.factor = float(factor)
        self.base = base
        self.support = base.support
        self.knots = base.knots

    def _derivs(self, r):
        return tuple(self.factor * v for v in self.base._derivs(r))

    def __repr__(self):
        return f"Scaled({self.factor!r}, {self.base!r})"


@dataclass(frozen=True)
class TrialFunction:
    """r^p psi_eps(r) with p = (4 - n - gamma + eps)/2 on the ball of radius R."""
    params: Params
    j0: int
    epsilon: float
    R: float = 1.0

    @property
    def power(self) -> float:
        return (4 - self.params.n - self.params.gamma + self.epsilon) / 2.0


@dataclass(frozen=True)
class ModeFunction:
    j: int
    profile: RadialProfile

    def __post_init__(self):
        if isinstance(self.j, bool) or not isinstance(self.j, (int, np.integer)) or self.j < 0:
            raise DomainError(f"mode degree must be a non-negative integer, got {self.j!r}")


@dataclass(frozen=True)
class MultiModeFunction:
    modes: tuple

    def __post_init__(self):
        modes = tuple(self.modes)
        if not modes:
            raise DomainError("a multi-mode function needs at least one mode")
        degrees = [m.j for m in modes]
        if len(set(degrees)) != len(degrees):
            raise DomainError(f"mode degrees must be distinct, got {degrees}")
        object.__setattr__(self, "modes", modes)


def as_multimode(f) -> MultiModeFunction:
    if isinstance(f, MultiModeFunction):
        return f
    if isinstance(f, ModeFunction):
        return MultiModeFunction((f,))
    return MultiModeFunction(tuple(f))


def smooth_bump(a: float, b: float) -> SmoothBump:
    return SmoothBump(a, b)


def random_profile(seed: int, a: float, b: float, degree: int = 4) -> PolyBump:
    """Bump times a polynomial with coefficients drawn uniformly from [-1, 1]."""
    if not 0 <= degree <= 8:
        raise DomainError(f"degree must lie in 0..8, got {degree!r}")
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-1.0, 1.0, degree + 1)
    return PolyBump(coeffs, a, b)


def cutoff(spec: CutoffSpec) -> Cutoff:
    return Cutoff(spec)


def nested_epsilon_schedule(eps0: float, steps: int) -> tuple:
    """eps0 * 2^-k for k = 0..steps-1; the cutoffs along it increase pointwise."""
    if not 0.0 < eps0 <= 1.0:
        raise DomainError(f"eps0 must lie in (0, 1], got {eps0!r}")
    return tuple(eps0 * 2.0 ** -k for k in range(steps))


def trial_radial(tf: TrialFunction) -> PowerTimes:
    return PowerTimes(tf.power, Cutoff(CutoffSpec(tf.epsilon, tf.R)))


def trial_mode(tf: TrialFunction) -> ModeFunction:
    return ModeFunction(tf.j0, trial_radial(tf))
