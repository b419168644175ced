"""Finite-difference Rayleigh-quotient oracle for the per-mode constants.

The per-mode quadratic forms are discretised directly in r on a log-uniform
grid, with F and F' clamped to zero at both ends:

    L(F)          ~ v^T Num v,   Num = Lh^T diag(r^{g+n-1} w) Lh
    M0(F)         ~ v^T B0 v     (trapezoid weights)
    M1(F)         ~ v^T B1 v     (one-sided differences on each cell)

where Lh is the conservative three-point discretisation of
-F'' - (n-1)F'/r + lambda F/r^2 at the interior nodes. The smallest
generalised eigenvalue of (Num, B) is a discrete Rayleigh-quotient minimum.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import constants as C
from .errors import DomainError, NumericalError
from .spectra import eigenvalue

DENSE_LIMIT = 1200


@dataclass(frozen=True)
class OracleGrid:
    r_min: float = 1e-3
    r_max: float = 1e3
    points: int = 1500

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise DomainError("grid needs 0 < r_min < r_max")
        if self.points < 50:
            raise DomainError("grid needs at least 50 points")

    def nodes(self) -> np.ndarray:
        return np.geomspace(self.r_min, self.r_max, self.points)


@dataclass(frozen=True)
class DiscretizedForms:
    r: np.ndarray             # interior nodes
    numerator: sp.csr_matrix
    rellich_denominator: sp.csr_matrix
    hardy_rellich_denominator: sp.csr_matrix


@dataclass(frozen=True)
class OracleResult:
    mu_min: float
    eigenvector: np.ndarray
    residual: float
    theoretical: float
    relative_gap: float


def discretize(p: C.Params, j: int, grid: OracleGrid) -> DiscretizedForms:
    n, g = p.n, p.gamma
    lam = eigenvalue(n, j)
    r = grid.nodes()
    P = len(r)
    h = np.diff(r)                      # cell widths
    rm = np.sqrt(r[:-1] * r[1:])        # cell midpoints (geometric)
    w = np.empty(P)                     # dual-cell widths
    w[1:-1] = 0.5 * (h[:-1] + h[1:])
    w[0], w[-1] = 0.5 * h[0], 0.5 * h[-1]

    # full-grid cell differences (v_{i+1} - v_i)/h_i
    D1 = sp.diags([-1.0 / h, 1.0 / h], [0, 1], shape=(P - 1, P), format="csr")
    flux = sp.diags(rm ** (n - 1)) @ D1
    inner = slice(1, P - 1)
    Lh = (-sp.diags(r[inner] ** (1 - n) / w[inner]) @ (flux[1:] - flux[:-1])
          + sp.diags(lam / r[inner] ** 2, 1, shape=(P - 2, P)))

    # clamped ends: the two outermost nodes on each side are pinned to zero,
    # so both F and its one-sided difference vanish at r_min and r_max
    keep = np.arange(2, P - 2)
    Lh = Lh[:, keep]
    D1 = D1[:, keep]
    num = Lh.T @ sp.diags(r[inner] ** (g + n - 1) * w[inner]) @ Lh
    b0 = sp.diags(r[keep] ** (g + n - 5) * w[keep])
    b1 = D1.T @ sp.diags(rm ** (g + n - 3) * h) @ D1
    return DiscretizedForms(r[keep], sp.csr_matrix(num), sp.csr_matrix(b0), sp.csr_matrix(b1 + lam * b0))


def _refine(A, B, mu, x, steps=2):
    """Newton correction of an eigenpair with residuals in extended precision.

    The pencil is too ill-conditioned for double-precision residuals to go
    below ~1e-7; the bordered correction is solved in double, residuals and
    updates are accumulated in long double.
    """
    AL, BL = A.astype(np.longdouble), B.astype(np.longdouble)
    x = (x / np.linalg.norm(x)).astype(np.longdouble)
    mu = np.longdouble(mu)
    for _ in range(steps):
        Bx = BL @ x
        r = AL @ x - mu * Bx
        bx = Bx.astype(float)[:, None]
        K = sp.bmat([[A - float(mu) * B, -bx], [-bx.T, None]], format="csc")
        try:
            sol = spla.splu(K).solve(np.append(-r.astype(float), 0.0))
        except RuntimeError as exc:
            raise NumericalError(f"refinement factorization failed: {exc}") from exc
        x = x + sol[:-1].astype(np.longdouble)
        mu = mu + np.longdouble(sol[-1])
    Ax = AL @ x
    res = np.sqrt(np.sum((Ax - mu * (BL @ x)) ** 2)) / max(np.sqrt(np.sum(Ax ** 2)), 1e-300)
    return float(mu), x.astype(float), float(res)


def _smallest_pair(A, B):
    """Smallest eigenpair of the symmetric-definite pencil (A, B)."""
    d = 1.0 / np.sqrt(B.diagonal())
    S = sp.diags(d)
    As = sp.csc_matrix(S @ A @ S)
    Bs = sp.csc_matrix(S @ B @ S)
    As = 0.5 * (As + As.T)
    Bs = 0.5 * (Bs + Bs.T)
    m = As.shape[0]
    if m <= DENSE_LIMIT:
        vals, vecs = scipy.linalg.eigh(As.toarray(), Bs.toarray(), subset_by_index=[0, 0])
        mu, x = float(vals[0]), vecs[:, 0]
    else:
        try:
            vals, vecs = spla.eigsh(As, k=1, M=Bs, sigma=-1.0, which="LM",
                                    v0=np.ones(m), tol=0.0, maxiter=10 * m)
        except spla.ArpackError as exc:
            raise NumericalError(f"eigen-solver failed: {exc}") from exc
        mu, x = float(vals[0]), vecs[:, 0]
    mu, x, residual = _refine(sp.csr_matrix(As), sp.csr_matrix(Bs), mu, x)
    if not np.isfinite(mu):
        raise NumericalError("eigen-solver returned a non-finite value")
    v = d * x
    k = int(np.argmax(np.abs(v)))
    v = v / v[k]
    return mu, v, residual


def min_quotient(forms: DiscretizedForms, quotient: str):
    if quotient == "rellich":
        B = forms.rellich_denominator
    elif quotient == "hardy-rellich":
        B = forms.hardy_rellich_denominator
    else:
        raise DomainError(f"unknown quotient {quotient!r}")
    return _smallest_pair(forms.numerator, B)


def theoretical_constant(p: C.Params, j: int, quotient: str) -> float:
    if quotient == "rellich":
        return (eigenvalue(p.n, j) + C.rellich_shift(p)) ** 2
    return C.hardy_rellich_alpha(p, j)


def oracle(p: C.Params, j: int, quotient: str = "hardy-rellich", grid: OracleGrid | None = None) -> OracleResult:
    grid = grid or OracleGrid()
    mu, v, res = min_quotient(discretize(p, j, grid), quotient)
    theory = theoretical_constant(p, j, quotient)
    gap = (mu - theory) / abs(theory) if theory != 0 else mu - theory
    return OracleResult(mu, v, res, theory, gap)


def converge_study(p: C.Params, j: int, quotient: str, domains, points_list) -> list:
    """mu_min for every (domain, points) pair, as rows of dicts."""
    rows = []
    for r_min, r_max in domains:
        for points in points_list:
            res = oracle(p, j, quotient, OracleGrid(r_min, r_max, points))
            rows.append({"r_min": r_min, "r_max": r_max, "points": points,
                         "mu_min": res.mu_min, "residual": res.residual,
                         "theoretical": res.theoretical, "relative_gap": res.relative_gap})
    return rows
