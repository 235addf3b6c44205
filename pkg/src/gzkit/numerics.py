"""Small-scale complex numerics: matrices, monic polynomials, root finding.

Polynomials are 1-D complex arrays of coefficients in descending powers with
leading coefficient exactly 1.  Eigenvalues are computed from the
characteristic polynomial (Faddeev-LeVerrier) with an Aberth-Ehrlich
simultaneous root iteration; both primitives are provided by the kernel
backend (compiled or numpy, see ``_backend``).

All returned spectra use one canonical order: ascending real part, ties
broken by ascending imaginary part.  Real parts closer than a small tie
tolerance are treated as equal so that round-off cannot flip the order of a
conjugate pair.
"""

import numpy as np

from ._backend import (
    aberth_kernel,
    charpoly_ext_kernel,
    charpoly_kernel,
    newton_polish_ext_kernel,
)
from .errors import ConvergenceFailure, DimensionMismatch

#: default relative tolerance for root residuals
DEFAULT_ROOT_TOL = 1e-11
#: cap on Aberth sweeps
MAX_SWEEPS = 200
#: two real parts closer than this (times scale) compare equal in the sort
TIE_TOL = 1e-12


def as_matrix(entries):
    """Validate and return a square complex matrix with finite entries.

    Extended-precision input is passed through; everything else is cast to
    complex128.
    """
    x = np.asarray(entries)
    if x.dtype != np.clongdouble:
        x = x.astype(np.complex128)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {x.shape}")
    if not (np.all(np.isfinite(x.real)) and np.all(np.isfinite(x.imag))):
        raise ValueError("matrix entries must be finite")
    return x


def principal_minor(x, m):
    """Upper-left m-by-m block of ``x`` (m is 1-based, 1 <= m <= n)."""
    x = np.asarray(x)
    n = x.shape[0]
    if not 1 <= m <= n:
        raise DimensionMismatch(f"minor index {m} out of range 1..{n}")
    return x[:m, :m]


def sort_spectrum(values, tie_tol=TIE_TOL):
    """Canonical spectral order: by real part, then imaginary part, ascending.

    Values whose real parts agree to ``tie_tol * scale`` are grouped and
    ordered by imaginary part, so a conjugate pair straddling round-off noise
    in the real part still sorts deterministically.
    """
    vals = np.asarray(values, dtype=np.complex128)
    if vals.size <= 1:
        return vals.copy()
    scale = 1.0 + float(np.max(np.abs(vals)))
    order = np.lexsort((vals.imag, vals.real))
    out = vals[order]
    tol = tie_tol * scale
    start = 0
    for i in range(1, len(out) + 1):
        if i == len(out) or out[i].real - out[i - 1].real > tol:
            if i - start > 1:
                out[start:i] = out[start:i][np.argsort(out[start:i].imag)]
            start = i
    return out


def poly_from_roots(roots, dtype=np.complex128):
    """Monic coefficients (descending) of the polynomial with given roots."""
    coeffs = np.ones(1, dtype=dtype)
    for root in np.asarray(roots).astype(dtype):
        coeffs = np.convolve(coeffs, np.array([1.0, -root], dtype=dtype))
    return coeffs


def poly_eval(coeffs, z):
    """Evaluate a coefficient array (descending powers) at ``z`` by Horner."""
    result = np.asarray(coeffs, dtype=np.complex128)[0] * np.ones_like(
        np.asarray(z, dtype=np.complex128)
    )
    for c in np.asarray(coeffs, dtype=np.complex128)[1:]:
        result = result * z + c
    return result


def charpoly(x):
    """Monic characteristic polynomial det(lambda*I - x), descending powers."""
    x = as_matrix(x)
    return charpoly_kernel(x)


def polyroots(coeffs, tol=DEFAULT_ROOT_TOL):
    """All roots (with multiplicity) of a monic polynomial, canonical order.

    Every returned root satisfies |p(root)| <= tol * (1 + max|coeff|);
    otherwise ConvergenceFailure is raised.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim != 1 or len(coeffs) < 2:
        raise DimensionMismatch("need a polynomial of degree >= 1")
    if coeffs[0] != 1.0:
        if coeffs[0] == 0:
            raise ValueError("leading coefficient is zero")
        coeffs = coeffs / coeffs[0]
    if tol <= 0:
        raise ValueError("tol must be positive")
    bound = tol * (1.0 + float(np.max(np.abs(coeffs))))
    roots, max_resid, _ = aberth_kernel(coeffs, bound, MAX_SWEEPS)
    if max_resid > bound:
        raise ConvergenceFailure(
            f"root residual {max_resid:.3e} above bound {bound:.3e} "
            f"after {MAX_SWEEPS} sweeps"
        )
    return sort_spectrum(roots)


def eigenvalues(x, tol=DEFAULT_ROOT_TOL):
    """Eigenvalues of ``x`` in canonical order (charpoly + polyroots)."""
    x = as_matrix(x)
    if x.shape[0] == 1:
        return x[0, :1].copy()
    return polyroots(charpoly(x), tol=tol)


def charpoly_ext(x):
    """Characteristic polynomial with the recursion run in extended precision."""
    return charpoly_ext_kernel(as_matrix(x))


def eigenvalues_ext(x, tol=DEFAULT_ROOT_TOL):
    """Eigenvalues in canonical order, polished to extended precision.

    The double-precision solver locates the spectrum globally; extended
    charpoly coefficients plus Newton polishing remove the double round-off,
    which matters downstream where eigenvalue perturbations are amplified by
    char-poly coefficient scale (the chart's finite differences).
    """
    x = as_matrix(x)
    if x.shape[0] == 1:
        return x[0, :1].astype(np.clongdouble)
    coeffs = charpoly_ext(x)
    roots = polyroots(coeffs.astype(np.complex128), tol=tol)
    return newton_polish_ext_kernel(coeffs, roots, 3)
