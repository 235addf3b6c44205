"""Orthogonal-polynomial chains as ladder demonstrations.

The Jacobi matrix of a three-term recurrence has the orthogonal polynomials
as characteristic polynomials of its leading minors, so the polynomial
zeros appear as ladder levels.  Rescaling the subdiagonal to ones by a
diagonal conjugation lands the chain on the Hessenberg section without
touching any minor spectrum.
"""

import numpy as np

from . import ladder as lad, numerics

CHEBYSHEV = "chebyshev1"
LEGENDRE = "legendre-like"
MEASURES = (CHEBYSHEV, LEGENDRE)


def recurrence_coefficients(measure, n):
    """Monic three-term recurrence data (a_1..a_n, beta_1..beta_{n-1}).

    p_m = (x - a_m) p_{m-1} - beta_{m-1} p_{m-2}, both measures symmetric
    about zero so all a_m vanish.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    a = np.zeros(n)
    if measure == CHEBYSHEV:
        beta = np.full(max(n - 1, 0), 0.25)
        if n > 1:
            beta[0] = 0.5
    elif measure == LEGENDRE:
        k = np.arange(1, n)
        beta = k**2 / (4.0 * k**2 - 1.0)
    else:
        raise ValueError(f"unknown measure {measure!r}; pick one of {MEASURES}")
    return a, beta


def jacobi_matrix(measure, n):
    """Symmetric tridiagonal matrix of the recurrence (sqrt(beta) couplings)."""
    a, beta = recurrence_coefficients(measure, n)
    j = np.diag(a.astype(np.complex128))
    off = np.sqrt(beta)
    for k in range(n - 1):
        j[k, k + 1] = off[k]
        j[k + 1, k] = off[k]
    return j


def unit_subdiagonal_form(j):
    """Diagonal conjugation scaling the subdiagonal to ones.

    D j D^{-1} with d_1 = 1, d_{k+1} = d_k / j_{k+1,k}; superdiagonal entries
    become the recurrence beta's and every minor spectrum is untouched.
    """
    j = np.asarray(j, dtype=np.complex128)
    n = j.shape[0]
    d = np.ones(n, dtype=np.complex128)
    for k in range(n - 1):
        if j[k + 1, k] == 0:
            raise ValueError("subdiagonal entry vanishes; chain is reducible")
        d[k + 1] = d[k] / j[k + 1, k]
    return np.diag(d) @ j @ np.diag(1.0 / d)


def monic_polynomials(measure, n):
    """Coefficient arrays of p_1..p_n straight from the recurrence."""
    a, beta = recurrence_coefficients(measure, n)
    polys = [np.array([1.0 + 0.0j]), np.array([1.0, -a[0]], dtype=np.complex128)]
    for m in range(2, n + 1):
        shifted = np.concatenate([polys[m - 1], [0.0]])
        shifted[1:] -= a[m - 1] * polys[m - 1]
        shifted[2:] -= beta[m - 2] * polys[m - 2]
        polys.append(shifted)
    return polys[1:]


def chebyshev_zeros(m):
    """cos((2k-1) pi / 2m), ascending: the level-m entries of the chain."""
    k = np.arange(1, m + 1)
    return np.sort(np.cos((2 * k - 1) * np.pi / (2 * m))).astype(np.complex128)


def demo(measure, n, tol=numerics.DEFAULT_ROOT_TOL):
    """Ladder of the chain vs independently computed polynomial zeros.

    Returns the per-level maximum distance between the extracted ladder and
    the zeros of the recurrence polynomials (root-found), plus the distance
    to the closed-form zeros for the Chebyshev measure.
    """
    section = unit_subdiagonal_form(jacobi_matrix(measure, n))
    z = lad.extract_ladder(section, tol=tol)
    per_level = []
    analytic = []
    for m, poly in enumerate(monic_polynomials(measure, n), start=1):
        level = z.ladder.level(m)
        if m == 1:
            zeros = np.array([-poly[1]])
        else:
            zeros = numerics.polyroots(poly, tol=tol)
        per_level.append(float(np.max(np.abs(level - zeros))))
        if measure == CHEBYSHEV:
            analytic.append(float(np.max(np.abs(level - chebyshev_zeros(m)))))
    out = {
        "measure": measure,
        "n": n,
        "per_level_residual": per_level,
        "max_residual": max(per_level),
        "member": lad.in_e_omega(z.ladder),
    }
    if analytic:
        out["analytic_residual"] = analytic
        out["max_analytic_residual"] = max(analytic)
    return out
