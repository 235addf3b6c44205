"""The unit-subdiagonal Hessenberg section and the inverse spectral map.

A section matrix has ones on the subdiagonal and zeros below it; its free
entries are the upper triangle including the diagonal.  ``reconstruct``
solves the inverse problem: given a ladder, produce the unique section
matrix whose minor spectra are the prescribed levels.
"""

import numpy as np

from . import numerics
from .errors import NumericalInstability

#: intermediate coefficients beyond this multiple of the input scale abort
GROWTH_CAP = 1e12


def is_hessenberg(x):
    """Exact pattern check: unit subdiagonal, zeros below it."""
    x = np.asarray(x)
    n = x.shape[0]
    for i in range(1, n):
        if x[i, i - 1] != 1.0:
            return False
        if np.any(x[i, : i - 1] != 0.0):
            return False
    return True


def reconstruct(ladder, dtype=np.complex128):
    """The section matrix whose m-th minor has the level-m entries as spectrum.

    Char polys of unit-subdiagonal Hessenberg matrices obey
    P_m = (lambda - a_{mm}) P_{m-1} - sum_{k<m} a_{km} P_{k-1},
    so column m is read off by expanding lambda*P_{m-1} - P_m in the basis
    {P_0, ..., P_{m-1}} by descending-degree back-substitution.  Triangular
    and division-free; columns are determined independently, which makes the
    result minor-compatible by construction.  ``dtype`` selects the working
    precision (the entries reach char-poly coefficient scale, so internal
    consumers peel in extended precision).
    """
    return reconstruct_from_levels(ladder.levels, dtype=dtype)


def reconstruct_from_levels(levels, dtype=np.complex128):
    """``reconstruct`` on a bare level list, preserving extended precision."""
    n = len(levels)
    polys = [np.ones(1, dtype=dtype)] + [
        numerics.poly_from_roots(levels[m - 1], dtype=dtype)
        for m in range(1, n + 1)
    ]
    scale = max(1.0, max(float(np.max(np.abs(p))) for p in polys))
    cap = GROWTH_CAP * scale

    h = np.zeros((n, n), dtype=dtype)
    for m in range(1, n + 1):
        # residual = lambda * P_{m-1} - P_m, degree <= m-1, held as length-m
        residual = np.concatenate([polys[m - 1], [0.0]]) - polys[m]
        residual = residual[1:]  # leading lambda^m coefficient cancels exactly
        for k in range(m, 0, -1):
            a_km = residual[m - k]  # coefficient of lambda^(k-1)
            if abs(a_km) > cap:
                raise NumericalInstability(
                    f"expansion coefficient {abs(a_km):.3e} exceeds "
                    f"{GROWTH_CAP:.0e} x input scale"
                )
            h[k - 1, m - 1] = a_km
            residual[m - k :] -= a_km * polys[k - 1]
        if m < n:
            h[m, m - 1] = 1.0
    return h
