"""The (r, s) coordinate chart on the generic locus.

A generic covered point factors uniquely as a torus element acting on the
section point with the same ladder: z = b . y,  y = reconstruct(ladder).
The eigenvalue coordinates r are the flattened ladder; the dual coordinates
are s_j = zeta_j(b), normalized so s is identically 1 on the section.  With
this orientation the index-j flow at time q scales s_j by e^q and the
bracket relations [r_i, s_j] = delta_ij s_j hold with the conventions of
``poisson``.

``compute_s`` recovers b by peeling one level at a time: the flows at
levels below m-1 act on the m-minor exactly as the smaller torus acts on
the smaller problem, while level-(m-1) flows fix the (m-1)-minor and scale
the last column's projector components.  Comparing those components between
the point and the lower-flowed section point isolates each parameter.
"""

from dataclasses import dataclass

import numpy as np

from . import flows, hessenberg, ladder as lad, numerics, poisson
from .errors import BranchMismatch, DimensionMismatch, NonGenericPoint, NotInOmega

#: default consistency tolerance for the peel and the chart round trip
CHART_TOL = 1e-8
#: finite-difference step factor for dual-coordinate gradients; smaller than
#: the generic-gradient step because the extended-precision evaluation path
#: leaves truncation, not noise, as the binding error
S_FD_STEP = 3e-7


@dataclass(frozen=True)
class ChartPoint:
    """Full coordinate tuple: d(n) eigenvalues and d(n-1) dual coordinates."""

    n: int
    r: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=np.complex128)
        s = np.asarray(self.s, dtype=np.complex128)
        if r.shape != (lad.d(self.n),):
            raise DimensionMismatch(f"need {lad.d(self.n)} eigenvalue coordinates")
        if s.shape != (lad.d(self.n - 1),):
            raise DimensionMismatch(f"need {lad.d(self.n - 1)} dual coordinates")
        if np.any(s == 0):
            raise ValueError("dual coordinates vanish nowhere; got a zero")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    def ladder(self):
        return lad.ladder_from_flat(self.r, self.n)


def _peel(x, levels, tol):
    """Dual coordinates by recursive level peeling on bare arrays.

    Works in whatever precision ``x`` carries; the section matrix reaches
    char-poly coefficient scale, so callers hand in extended precision to
    keep the component ratios clean.
    """
    n = x.shape[0]
    if n == 1:
        return np.empty(0, dtype=x.dtype)

    lower = _peel(x[: n - 1, : n - 1], levels[: n - 1], tol)

    y = hessenberg.reconstruct_from_levels(levels, dtype=x.dtype)
    if len(lower):
        zeta_low = np.concatenate([lower, np.ones(n - 1, dtype=x.dtype)])
        x_low = flows.apply_torus_raw(y, levels, zeta_low)
    else:
        x_low = y

    # The point and the lower-flowed section point now share the (n-1)-minor;
    # the remaining discrepancy is a pure level-(n-1) conjugation, which
    # scales the projector components of the last column branch by branch.
    minor = x[: n - 1, : n - 1]
    level = levels[n - 2]
    col = x[: n - 1, n - 1]
    col_low = x_low[: n - 1, n - 1]
    row = x[n - 1, : n - 1]
    row_low = x_low[n - 1, : n - 1]
    scale = 1.0 + float(np.max(np.abs(x)))

    s_level = np.empty(n - 1, dtype=x.dtype)
    for ell in range(1, n):
        proj = flows.spectral_projector(minor, level[ell - 1], level)
        comp = proj @ col_low
        comp_z = proj @ col
        if np.max(np.abs(comp)) <= tol * scale or np.max(np.abs(comp_z)) <= tol * scale:
            raise NonGenericPoint(
                f"level {n - 1} branch {ell}: last-column projector component "
                "vanishes within tolerance"
            )
        pick = int(np.argmax(np.abs(comp)))
        g = comp_z[pick] / comp[pick]
        row_res = row @ proj - (row_low @ proj) / g
        limit = tol * (scale + float(np.max(np.abs(row_low @ proj / g))))
        if np.max(np.abs(row_res)) > limit:
            raise BranchMismatch(
                f"level {n - 1} branch {ell}: last-row components inconsistent "
                "with the column ratio"
            )
        s_level[ell - 1] = 1.0 / g
    if abs(x[n - 1, n - 1] - x_low[n - 1, n - 1]) > tol * scale:
        raise BranchMismatch("corner entry differs from the flowed section point")
    return np.concatenate([lower, s_level])


def _peel_checked(x_ext, levels_ext, tol):
    """Peel plus full round-trip verification, all in extended precision."""
    s_ext = _peel(x_ext, levels_ext, tol)
    n = x_ext.shape[0]
    if n > 1:
        y = hessenberg.reconstruct_from_levels(levels_ext, dtype=np.clongdouble)
        back = flows.apply_torus_raw(y, levels_ext, s_ext)
        scale = 1.0 + float(np.max(np.abs(x_ext)))
        err = float(np.max(np.abs(back - x_ext)))
        if err > tol * scale:
            raise BranchMismatch(
                f"assembled torus element misses the point by {err:.3e}"
            )
    return s_ext


def compute_s(z, tol=CHART_TOL):
    """Dual coordinates of a covered point, verified by a full round trip.

    The peel runs in 80-bit extended precision (the section matrix and its
    flow images live at char-poly coefficient scale, far above the point
    itself).  After the peel, the assembled torus element is applied to the
    section point and the result compared entrywise against ``z.x``;
    disagreement raises BranchMismatch rather than returning silently wrong
    coordinates.
    """
    if not lad.in_e_omega(z.ladder):
        raise NotInOmega("dual coordinates are defined on the generic locus only")
    x_ext = z.x.astype(np.clongdouble)
    levels_ext = [level.astype(np.clongdouble) for level in z.ladder.levels]
    return _peel_checked(x_ext, levels_ext, tol).astype(np.complex128)


def chart(x, tol=CHART_TOL):
    """Coordinates of a matrix on the canonical sheet of the cover."""
    z = lad.extract_ladder(x)
    if not lad.in_e_omega(z.ladder):
        raise NotInOmega("matrix is outside the generic locus")
    return ChartPoint(z.n, z.ladder.flat(), compute_s(z, tol=tol))


def unchart(p, tol=CHART_TOL):
    """Invert the chart: flow the reconstructed section point by ``p.s``."""
    ladder = p.ladder()
    if not lad.in_e_omega(ladder):
        raise NotInOmega("assembled ladder fails the generic-stratum condition")
    section = lad.CoveredPoint(hessenberg.reconstruct(ladder), ladder)
    return flows.torus_apply(flows.TorusElement(p.n, p.s), section).x


def r_over_s(p, i):
    """The conjugate momentum r_i / s_i for a flowing index i <= d(n-1)."""
    if not 1 <= i <= lad.d(p.n - 1):
        raise DimensionMismatch(f"index {i} out of range 1..{lad.d(p.n - 1)}")
    return complex(p.r[i - 1] / p.s[i - 1])


def s_on_sheet(x, reference, tol=CHART_TOL):
    """Dual coordinates of ``x`` on the sheet nearest a reference ladder.

    Minor spectra are re-extracted in extended precision and nearest-matched
    to the reference level by level; double-rounding them first would put a
    noise floor under every finite difference taken through this function.
    """
    x = numerics.as_matrix(x)
    n = x.shape[0]
    levels_ext = []
    for m in range(1, n + 1):
        vals = numerics.eigenvalues_ext(x[:m, :m])
        levels_ext.append(lad.match_to_reference(vals, reference.level(m)))
    return _peel_checked(x.astype(np.clongdouble), levels_ext, tol).astype(
        np.complex128
    )


def s_function(z, j, tol=CHART_TOL):
    """s_j as a sheet-tracked MatrixFunction (finite-difference friendly)."""
    reference = z.ladder

    def evaluate(x):
        return complex(s_on_sheet(x, reference, tol=tol)[j - 1])

    return poisson.MatrixFunction(evaluate, name=f"s_{j}")


def s_jacobian(z, h=None, tol=CHART_TOL):
    """All dual-coordinate gradients at once, in tr-pairing layout.

    Central differences on every entry, tracked to z's sheet.  Returns an
    array of shape (d(n-1), n, n) whose [j-1] slice G satisfies
    tr(G E) ~ derivative of s_j along E.  One call shares the 2 n^2 chart
    evaluations across all j.
    """
    x = z.x
    n = z.n
    if h is None:
        h = S_FD_STEP * (1.0 + float(np.max(np.abs(x))))
    jac = np.empty((lad.d(n - 1), n, n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            xp = x.copy()
            xp[a, b] += h
            xm = x.copy()
            xm[a, b] -= h
            diff = s_on_sheet(xp, z.ladder, tol=tol) - s_on_sheet(xm, z.ladder, tol=tol)
            jac[:, b, a] = diff / (2.0 * h)
    return jac


def recover_torus_element(z, target, tol=CHART_TOL):
    """The unique torus element mapping ``z`` to ``target`` (equal ladders).

    Simple transitivity in coordinates: componentwise ratio of dual
    coordinates.
    """
    if z.n != target.n:
        raise DimensionMismatch("points of different size")
    for lz, lt in zip(z.ladder.levels, target.ladder.levels):
        if np.max(np.abs(lz - lt)) > tol * z.ladder.scale():
            raise BranchMismatch("points lie over different ladders")
    return flows.TorusElement(
        z.n, compute_s(target, tol=tol) / compute_s(z, tol=tol)
    )
