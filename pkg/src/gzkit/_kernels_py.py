"""Pure numpy implementations of the hot kernels.

Mirrors the compiled extension in ``_kernels.pyx``: same algorithms, same
update schedule, so the two backends agree to round-off and either one can
serve the rest of the package.
"""

import numpy as np

COMPILED = False

_EPS = float(np.finfo(np.float64).eps)


def charpoly(a):
    """Monic characteristic polynomial coefficients, descending powers.

    Faddeev-LeVerrier recursion: M_k = a M_{k-1} + c_{k-1} I,
    c_k = -tr(a M_k)/k.  Division-free apart from the trace scaling, exact
    for integer input up to round-off.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.empty(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    eye = np.eye(n, dtype=np.complex128)
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def charpoly_ext(a):
    """Faddeev-LeVerrier in 80-bit extended precision."""
    a = np.ascontiguousarray(a, dtype=np.clongdouble)
    n = a.shape[0]
    coeffs = np.empty(n + 1, dtype=np.clongdouble)
    coeffs[0] = 1.0
    eye = np.eye(n, dtype=np.clongdouble)
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def newton_polish_ext(coeffs, roots, steps):
    """Newton steps against extended-precision coefficients."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.clongdouble)
    deg = len(coeffs) - 1
    dcoeffs = coeffs[:-1] * np.arange(deg, 0, -1, dtype=np.longdouble)
    z = np.ascontiguousarray(roots, dtype=np.clongdouble).copy()
    for _ in range(steps):
        p, dp = _poly_and_deriv(coeffs, dcoeffs, z)
        safe = np.abs(dp) > 0
        z = np.where(safe, z - p / np.where(safe, dp, 1.0), z)
    return z


def _poly_and_deriv(coeffs, dcoeffs, z):
    p = np.full_like(z, coeffs[0])
    for c in coeffs[1:]:
        p = p * z + c
    dp = np.full_like(z, dcoeffs[0]) if len(dcoeffs) else np.zeros_like(z)
    for c in dcoeffs[1:]:
        dp = dp * z + c
    return p, dp


def aberth(coeffs, resid_target, max_sweeps):
    """Simultaneous root iteration (Aberth-Ehrlich, Jacobi updates).

    ``coeffs`` must be monic, descending.  Returns ``(roots, max_residual,
    sweeps)``; the caller decides whether ``max_residual`` is acceptable.
    Initial guesses sit on a circle of radius 1 + max|coeff| with a fixed
    angular offset to break symmetric stalls.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    deg = len(coeffs) - 1
    dcoeffs = coeffs[:-1] * np.arange(deg, 0, -1)

    radius = 1.0 + float(np.max(np.abs(coeffs)))
    angles = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * np.exp(1j * angles)

    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        p, dp = _poly_and_deriv(coeffs, dcoeffs, z)
        if np.max(np.abs(p)) <= resid_target:
            break
        dp = np.where(dp == 0, _EPS, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        repel = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - newton * repel
        denom = np.where(denom == 0, _EPS, denom)
        step = newton / denom
        z = z - step
        if np.max(np.abs(step)) <= 4.0 * _EPS * (1.0 + np.max(np.abs(z))):
            break

    # Newton polishing; steps are skipped where the derivative underflows
    # (clustered roots), which only happens once the residual is tiny anyway.
    for _ in range(2):
        p, dp = _poly_and_deriv(coeffs, dcoeffs, z)
        safe = np.abs(dp) > 0
        z = np.where(safe, z - p / np.where(safe, dp, 1.0), z)

    p, _ = _poly_and_deriv(coeffs, dcoeffs, z)
    return z, float(np.max(np.abs(p))), sweeps
