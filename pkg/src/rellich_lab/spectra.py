"""Spectral data of the Laplace-Beltrami operator on the unit sphere S^{n-1},
and the iterated-logarithm weights used by the log-refined inequalities."""

import math

import numpy as np

from .errors import DomainError

MAX_ITERATED_EXP = 4


def _check_nj(n, j):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or j < 0:
        raise DomainError(f"degree must be a non-negative integer, got {j!r}")


def eigenvalue(n: int, j: int) -> float:
    """Eigenvalue j(j+n-2) of -Delta on S^{n-1} for harmonics of degree j."""
    _check_nj(n, j)
    return float(j * (j + n - 2))


def multiplicity(n: int, j: int) -> int:
    """Dimension of the space of degree-j spherical harmonics on S^{n-1}."""
    _check_nj(n, j)
    n, j = int(n), int(j)
    if j == 0:
        return 1
    # (2j+n-2)/(j+n-2) * C(j+n-2, n-2); the product is divisible exactly
    return (2 * j + n - 2) * math.comb(j + n - 2, n - 2) // (j + n - 2)


def iterated_exp(j: int) -> float:
    """e_0 = 0, e_{k+1} = exp(e_k); capped at j = 4 to stay finite."""
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or j < 0:
        raise DomainError(f"index must be a non-negative integer, got {j!r}")
    if j > MAX_ITERATED_EXP:
        raise DomainError(f"iterated exponential e_{j} overflows; max index is {MAX_ITERATED_EXP}")
    value = 0.0
    for _ in range(int(j)):
        value = math.exp(value)
    return value


def iterated_logs(x, depth: int) -> np.ndarray:
    """Rows ln_1(x), ..., ln_depth(x); raises if any intermediate log is <= 0."""
    x = np.asarray(x, dtype=float)
    out = np.empty((depth,) + x.shape)
    cur = x
    for k in range(depth):
        if np.any(cur <= 0.0):
            raise DomainError(f"iterated logarithm ln_{k + 1} undefined: argument <= 0")
        cur = np.log(cur)
        out[k] = cur
    if depth and np.any(cur <= 0.0):
        raise DomainError(f"ln_{depth} is non-positive on the requested points")
    return out


def log_refinement_weight(r, N: int, eta: float):
    """Sum over k=1..N of prod_{p<=k} ln_p(eta/r)^{-2}.

    Accepts scalars or arrays; every iterated log must stay positive.
    """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or not 1 <= N <= MAX_ITERATED_EXP:
        raise DomainError(f"refinement depth N must lie in 1..{MAX_ITERATED_EXP}, got {N!r}")
    scalar = np.ndim(r) == 0
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or not eta > 0.0:
        raise DomainError("log refinement needs r > 0 and eta > 0")
    logs = iterated_logs(eta / r, N)
    inv_sq = logs ** -2.0
    total = np.cumprod(inv_sq, axis=0).sum(axis=0)
    return float(total) if scalar else total
