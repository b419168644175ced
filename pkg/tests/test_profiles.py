import math

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from rellich_lab.constants import Params
from rellich_lab.errors import DomainError
from rellich_lab.profiles import (CutoffSpec, LogPlateau, ModeFunction, MultiModeFunction, PowerTimes,
                                  Scaled, TrialFunction, cutoff, nested_epsilon_schedule, random_profile,
                                  smooth_bump, smooth_step, trial_radial)

r = sp.symbols("r", positive=True)


def sym_step(x):
    s = sp.exp(-1 / x)
    return s / (s + sp.exp(-1 / (1 - x)))


def _mp_eval(fns, x):
    with mpmath.workdps(40):
        return [np.array([float(f(mpmath.mpf(float(t)))) for t in x]) for f in fns]


def lambdified(expr, lo, hi):
    """Values, first and second derivatives of a sympy expression evaluated at
    40 digits, zero outside (lo, hi)."""
    fns = [sp.lambdify(r, sp.diff(expr, r, k), "mpmath") for k in range(3)]

    def ev(x):
        x = np.asarray(x, dtype=float)
        inside = (x > lo) & (x < hi)
        out = []
        for vals in _mp_eval(fns, x[inside]):
            v = np.zeros_like(x)
            v[inside] = vals
            out.append(v)
        return out
    return ev


def sup_rel_err(a, b):
    scale = max(np.max(np.abs(b)), 1e-300)
    return np.max(np.abs(a - b)) / scale


def interior_points(lo, hi, count=100, seed=0):
    return np.random.default_rng(seed).uniform(lo, hi, count)


def finite_difference_check(prof, lo, hi, seed=0):
    h = 1e-5 * (hi - lo)
    x = interior_points(lo + h, hi - h, seed=seed)
    F0, F1, F2 = prof.derivatives(x)
    fp, fm = prof(x + h), prof(x - h)
    d1 = (fp - fm) / (2 * h)
    d2 = (fp - 2 * F0 + fm) / h ** 2
    return sup_rel_err(d1, F1), sup_rel_err(d2, F2)


# --- smooth bump ---------------------------------------------------------------

def test_bump_midpoint_and_edges():
    b = smooth_bump(1.0, 3.0)
    F, F1, F2 = b.derivatives(np.array([2.0, 1.0, 3.0, 0.5, 3.5]))
    assert F[0] == pytest.approx(math.exp(-1), abs=1e-15)
    assert F1[0] == pytest.approx(0.0, abs=1e-15)
    assert np.all(F[1:] == 0) and np.all(F1[1:] == 0) and np.all(F2[1:] == 0)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (-1.0, 1.0), (2.0, 2.0), (3.0, 1.0)])
def test_bump_rejects_bad_interval(a, b):
    with pytest.raises(DomainError):
        smooth_bump(a, b)


def test_bump_matches_symbolic_oracle():
    a, b = 0.7, 2.9
    t = (2 * r - a - b) / (b - a)
    ev = lambdified(sp.exp(-1 / (1 - t ** 2)), a, b)
    x = np.linspace(a + 1e-3, b - 1e-3, 2001)
    for got, want in zip(smooth_bump(a, b).derivatives(x), ev(x)):
        assert sup_rel_err(got, want) < 1e-12


# --- smooth step and cutoffs ---------------------------------------------------

def test_smooth_step_matches_symbolic_oracle():
    x = sp.symbols("x")
    expr = sym_step(x)
    fns = [sp.lambdify(x, sp.diff(expr, x, k), "mpmath") for k in range(3)]
    t = np.linspace(0.01, 0.99, 999)
    for got, want in zip(smooth_step(t), _mp_eval(fns, t)):
        assert sup_rel_err(got, want) < 1e-13


def test_smooth_step_is_exactly_flat_outside_unit_interval():
    S, S1, S2 = smooth_step(np.array([-1.0, 0.0, 1e-4, 1 - 1e-4, 1.0, 2.0]))
    np.testing.assert_array_equal(S, [0, 0, 0, 1, 1, 1])
    assert np.all(S1 == 0) and np.all(S2 == 0)


@pytest.mark.parametrize("eps", [1.0, 0.5, 0.1, 2 ** -10])
@pytest.mark.parametrize("R", [1.0, 3.7])
def test_cutoff_plateau_and_support_are_exact(eps, R):
    psi = cutoff(CutoffSpec(eps, R))
    plateau = np.linspace(eps * R / 5, 4 * R / 5, 1001)
    assert np.all(psi(plateau) == 1.0)
    outside = np.concatenate([np.linspace(1e-9, eps * R / 10, 101), np.linspace(9 * R / 10, R, 101)])
    assert np.all(psi(outside) == 0.0)
    x = np.linspace(1e-9, R, 20001)
    v = psi(x)
    assert np.all((v >= 0) & (v <= 1))


@pytest.mark.parametrize("eps", [1.0, 0.3, 0.01])
def test_cutoff_is_monotone_on_transition_bands(eps):
    R = 2.0
    psi = cutoff(CutoffSpec(eps, R))
    up = psi(np.linspace(eps * R / 10, eps * R / 5, 4001))
    down = psi(np.linspace(4 * R / 5, 9 * R / 10, 4001))
    assert np.all(np.diff(up) >= 0) and np.all(np.diff(down) <= 0)
    mid_up = psi(np.linspace(eps * R / 10, eps * R / 5, 101)[40:60])
    assert np.all(np.diff(mid_up) > 0)


def test_cutoff_examples():
    assert cutoff(CutoffSpec(1.0, 1.0))(0.5) == 1.0
    for eps in (1.0, 0.5, 0.01):
        assert cutoff(CutoffSpec(eps, 1.0))(eps / 10) == 0.0
    assert cutoff(CutoffSpec(0.5, 1.0))(19 / 20) == 0.0


@pytest.mark.parametrize("eps", [0.0, -0.1, 1.5])
def test_cutoff_rejects_bad_epsilon(eps):
    with pytest.raises(DomainError):
        CutoffSpec(eps, 1.0)


def test_cutoff_matches_symbolic_oracle_on_both_bands():
    eps, R = 0.25, 1.5
    psi = cutoff(CutoffSpec(eps, R))
    inner = lambdified(sym_step((r - eps * R / 10) * 10 / (eps * R)), eps * R / 10, eps * R / 5)
    outer = lambdified(sym_step((9 * R / 10 - r) * 10 / R), 4 * R / 5, 9 * R / 10)
    for lo, hi, ev in ((eps * R / 10, eps * R / 5, inner), (4 * R / 5, 9 * R / 10, outer)):
        x = np.linspace(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo), 999)
        for got, want in zip(psi.derivatives(x), ev(x)):
            assert sup_rel_err(got, want) < 1e-11


def test_cutoff_derivative_bounds_scale_with_epsilon():
    R = 1.0
    rows = []
    for eps in (0.5, 0.05, 0.005):
        psi = cutoff(CutoffSpec(eps, R))
        x = np.linspace(eps * R / 10, eps * R / 5, 20001)
        _, d1, d2 = psi.derivatives(x)
        rows.append((np.max(np.abs(d1)) * eps * R, np.max(np.abs(d2)) * (eps * R) ** 2))
    rows = np.array(rows)
    np.testing.assert_allclose(rows, np.broadcast_to(rows[0], rows.shape), rtol=1e-6)


def test_nested_schedule():
    assert nested_epsilon_schedule(0.5, 3) == (0.5, 0.25, 0.125)
    s = nested_epsilon_schedule(1.0, 12)
    assert all(b < a for a, b in zip(s, s[1:]))
    with pytest.raises(DomainError):
        nested_epsilon_schedule(0.0, 3)


def test_cutoffs_increase_along_schedule():
    x = np.random.default_rng(3).uniform(1e-4, 1.0, 1000)
    sched = nested_epsilon_schedule(0.5, 8)
    vals = [cutoff(CutoffSpec(e, 1.0))(x) for e in sched]
    for a, b in zip(vals, vals[1:]):
        assert np.all(b >= a)


# --- trial functions -----------------------------------------------------------

def test_trial_exponent():
    assert TrialFunction(Params(5, 0), 0, 0.1).power == pytest.approx(-0.45, abs=1e-15)
    assert TrialFunction(Params(4, 0), 0, 0.0).power == 0.0


def test_trial_radial_equals_power_on_plateau():
    tf = TrialFunction(Params(5, 0), 0, 0.1, 2.0)
    F = trial_radial(tf)
    x = np.linspace(0.1 * 2.0 / 5, 4 * 2.0 / 5, 500)
    np.testing.assert_allclose(F(x), x ** tf.power, rtol=1e-15)
    assert F.support[0] == pytest.approx(0.1 * 2.0 / 10) and F.support[0] > 0


def test_trial_radial_matches_symbolic_oracle():
    tf = TrialFunction(Params(3, 1.5), 1, 0.2, 1.0)
    F = trial_radial(tf)
    lo, hi = 0.02, 0.04
    ev = lambdified(r ** sp.Rational(tf.power).limit_denominator(10 ** 6)
                    * sym_step((r - lo) * 10 / 0.2), lo, hi)
    x = np.linspace(lo + 2e-5, hi - 2e-5, 999)
    for got, want in zip(F.derivatives(x), ev(x)):
        assert sup_rel_err(got, want) < 1e-9


# --- random profiles and finite-difference checks ------------------------------

def test_random_profile_is_deterministic():
    x = np.linspace(0.5, 2.5, 77)
    a = random_profile(11, 0.5, 2.5, 4).derivatives(x)
    b = random_profile(11, 0.5, 2.5, 4).derivatives(x)
    for u, v in zip(a, b):
        np.testing.assert_array_equal(u, v)
    c = random_profile(12, 0.5, 2.5, 4)(x)
    assert not np.array_equal(a[0], c)


def test_random_profile_vanishes_at_ends():
    F = random_profile(5, 0.3, 1.1, 6)
    for v in F.derivatives(np.array([0.3, 1.1])):
        assert np.all(v == 0)


def test_random_profile_degree_cap():
    with pytest.raises(DomainError):
        random_profile(0, 1.0, 2.0, 9)


PROFILES = [
    ("bump", lambda: smooth_bump(1.0, 3.0), 1.0, 3.0),
    ("poly", lambda: random_profile(7, 0.5, 2.5, 4), 0.5, 2.5),
    ("cutoff", lambda: cutoff(CutoffSpec(0.5, 1.0)), 0.05, 0.9),
    ("trial", lambda: trial_radial(TrialFunction(Params(5, 0), 0, 0.25, 1.0)), 0.025, 0.9),
    ("logplateau", lambda: LogPlateau(0.5, 2.0, 1.0), 0.5 / math.e, 2.0 * math.e),
    ("power", lambda: PowerTimes(-1.3, smooth_bump(0.2, 0.6)), 0.2, 0.6),
    ("scaled", lambda: Scaled(-3.0, random_profile(2, 1.0, 4.0, 8)), 1.0, 4.0),
]


@pytest.mark.parametrize("name, make, lo, hi", PROFILES, ids=[p[0] for p in PROFILES])
def test_derivatives_match_finite_differences(name, make, lo, hi):
    # the step is 1e-5 of each smooth piece; a single step across a narrow
    # inner band of a multi-scale profile would be dominated by truncation
    F = make()
    bp = F.breakpoints()
    assert bp[0] == pytest.approx(lo) and bp[-1] == pytest.approx(hi)
    for a, b in zip(bp, bp[1:]):
        e1, e2 = finite_difference_check(F, a, b)
        assert e1 < 1e-6
        assert e2 < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.05, 3.0), st.floats(0.2, 4.0), st.integers(0, 8))
def test_random_profiles_pass_finite_differences(seed, a, width, degree):
    F = random_profile(seed, a, a + width, degree)
    e1, e2 = finite_difference_check(F, a, a + width, seed=seed)
    assert e1 < 1e-6 and e2 < 1e-6


@given(st.floats(0.05, 3.0), st.floats(0.2, 4.0), st.floats(-5, 5))
def test_profiles_vanish_outside_support(a, width, x_shift):
    F = random_profile(1, a, a + width, 3)
    x = np.array([a - abs(x_shift) - 1e-9, a + width + abs(x_shift) + 1e-9])
    for v in F.derivatives(x):
        assert np.all(v == 0)


# --- mode containers -----------------------------------------------------------

def test_mode_function_rejects_negative_degree():
    with pytest.raises(DomainError):
        ModeFunction(-1, smooth_bump(1, 2))


def test_multimode_needs_distinct_degrees():
    b = smooth_bump(1, 2)
    with pytest.raises(DomainError):
        MultiModeFunction((ModeFunction(1, b), ModeFunction(1, b)))
    with pytest.raises(DomainError):
        MultiModeFunction(())
    assert len(MultiModeFunction((ModeFunction(0, b), ModeFunction(2, b))).modes) == 2
