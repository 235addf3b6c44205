# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: characteristic polynomials and root iteration.

Same algorithms and update schedule as the numpy fallback in
``_kernels_py``; the two backends agree to round-off.
"""

import numpy as np

COMPILED = True

cdef double _EPS = np.finfo(np.float64).eps


def charpoly(a):
    """Monic characteristic polynomial coefficients, descending powers.

    Faddeev-LeVerrier recursion: M_k = a M_{k-1} + c_{k-1} I,
    c_k = -tr(a M_k)/k.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex[:, ::1] av = a
    cdef Py_ssize_t n = av.shape[0]
    coeffs = np.empty(n + 1, dtype=np.complex128)
    cdef double complex[::1] cv = coeffs
    work = np.zeros((n, n), dtype=np.complex128)
    prod = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] m = work
    cdef double complex[:, ::1] am = prod
    cdef Py_ssize_t i, j, k, t
    cdef double complex acc, tr
    cv[0] = 1.0
    for k in range(1, n + 1):
        # am = a @ m + c_{k-1} I
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for t in range(n):
                    acc = acc + av[i, t] * m[t, j]
                am[i, j] = acc
            am[i, i] = am[i, i] + cv[k - 1]
        # m = am; c_k = -tr(a @ am) / k
        tr = 0.0
        for i in range(n):
            for j in range(n):
                m[i, j] = am[i, j]
        for i in range(n):
            acc = 0.0
            for t in range(n):
                acc = acc + av[i, t] * am[t, i]
            tr = tr + acc
        cv[k] = -tr / k
    return coeffs


def charpoly_ext(a):
    """Faddeev-LeVerrier in 80-bit extended precision."""
    a = np.ascontiguousarray(a, dtype=np.clongdouble)
    cdef long double complex[:, ::1] av = a
    cdef Py_ssize_t n = av.shape[0]
    coeffs = np.empty(n + 1, dtype=np.clongdouble)
    cdef long double complex[::1] cv = coeffs
    work = np.zeros((n, n), dtype=np.clongdouble)
    prod = np.empty((n, n), dtype=np.clongdouble)
    cdef long double complex[:, ::1] m = work
    cdef long double complex[:, ::1] am = prod
    cdef Py_ssize_t i, j, k, t
    cdef long double complex acc, tr
    cv[0] = 1.0
    for k in range(1, n + 1):
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for t in range(n):
                    acc = acc + av[i, t] * m[t, j]
                am[i, j] = acc
            am[i, i] = am[i, i] + cv[k - 1]
        tr = 0.0
        for i in range(n):
            for j in range(n):
                m[i, j] = am[i, j]
        for i in range(n):
            acc = 0.0
            for t in range(n):
                acc = acc + av[i, t] * am[t, i]
            tr = tr + acc
        cv[k] = -tr / k
    return coeffs


cdef inline double _cabs(double complex z):
    return (z.real * z.real + z.imag * z.imag) ** 0.5


def aberth(coeffs, double resid_target, int max_sweeps):
    """Simultaneous root iteration (Aberth-Ehrlich, Jacobi updates).

    Returns (roots, max_residual, sweeps); the caller judges the residual.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[::1] cf = coeffs
    cdef Py_ssize_t deg = cf.shape[0] - 1
    dc = coeffs[:-1] * np.arange(deg, 0, -1)
    cdef double complex[::1] df = dc

    radius = 1.0 + float(np.max(np.abs(coeffs)))
    angles = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    roots = radius * np.exp(1j * angles)
    cdef double complex[::1] z = roots
    steps = np.empty(deg, dtype=np.complex128)
    cdef double complex[::1] w = steps
    pvals = np.empty(deg, dtype=np.complex128)
    cdef double complex[::1] pv = pvals

    cdef Py_ssize_t i, j, k, sweep
    cdef double complex p, dp, newton, repel, denom
    cdef double max_resid, max_step, zmax
    cdef int done = 0

    sweep = 0
    for sweep in range(1, max_sweeps + 1):
        max_resid = 0.0
        for i in range(deg):
            p = cf[0]
            for k in range(1, deg + 1):
                p = p * z[i] + cf[k]
            pv[i] = p
            if _cabs(p) > max_resid:
                max_resid = _cabs(p)
        if max_resid <= resid_target:
            done = 1
            break
        max_step = 0.0
        zmax = 0.0
        for i in range(deg):
            dp = df[0]
            for k in range(1, deg):
                dp = dp * z[i] + df[k]
            if dp == 0:
                dp = _EPS
            newton = pv[i] / dp
            repel = 0.0
            for j in range(deg):
                if j != i:
                    repel = repel + 1.0 / (z[i] - z[j])
            denom = 1.0 - newton * repel
            if denom == 0:
                denom = _EPS
            w[i] = newton / denom
            if _cabs(w[i]) > max_step:
                max_step = _cabs(w[i])
        for i in range(deg):
            z[i] = z[i] - w[i]
            if _cabs(z[i]) > zmax:
                zmax = _cabs(z[i])
        if max_step <= 4.0 * _EPS * (1.0 + zmax):
            done = 1
            break

    # Newton polishing with a zero-derivative guard, as in the fallback.
    for j in range(2):
        for i in range(deg):
            p = cf[0]
            for k in range(1, deg + 1):
                p = p * z[i] + cf[k]
            dp = df[0]
            for k in range(1, deg):
                dp = dp * z[i] + df[k]
            if dp != 0:
                z[i] = z[i] - p / dp

    max_resid = 0.0
    for i in range(deg):
        p = cf[0]
        for k in range(1, deg + 1):
            p = p * z[i] + cf[k]
        if _cabs(p) > max_resid:
            max_resid = _cabs(p)
    return roots, max_resid, sweep


def newton_polish_ext(coeffs, roots, int steps):
    """Newton steps against extended-precision coefficients."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.clongdouble)
    cdef long double complex[::1] cf = coeffs
    cdef Py_ssize_t deg = cf.shape[0] - 1
    dc = np.ascontiguousarray(coeffs[:-1] * np.arange(deg, 0, -1, dtype=np.longdouble))
    cdef long double complex[::1] df = dc
    out = np.ascontiguousarray(roots, dtype=np.clongdouble).copy()
    cdef long double complex[::1] z = out
    cdef Py_ssize_t i, k, t
    cdef long double complex p, dp
    for t in range(steps):
        for i in range(z.shape[0]):
            p = cf[0]
            for k in range(1, deg + 1):
                p = p * z[i] + cf[k]
            dp = df[0]
            for k in range(1, deg):
                dp = dp * z[i] + df[k]
            if dp != 0:
                z[i] = z[i] - p / dp
    return out
