"""Exact integration of the ladder flows and the torus action.

The Hamiltonian field of the eigenvalue coordinate with flat index j
(level m, branch l) integrates to conjugation:

    x(q) = g x g^{-1},   g = I + (e^{-q} - 1) * E,

where E is the spectral projector of the m-by-m minor onto its l-th stored
eigenvalue, padded with zeros to full size.  Because E is a polynomial in
the minor, the conjugation fixes minors 1..m exactly and preserves every
minor spectrum, so the stored ladder is carried along unchanged.

A torus element holds one nonzero parameter zeta_j per flowing index
j = 1..d(n-1); it acts as the composite of the flows at times q_j = log
zeta_j (principal branch), i.e. the step-j conjugator is built from
zeta_j^{-1}.  Top-level indices do not flow: their fields vanish.
"""

from dataclasses import dataclass

import numpy as np

from . import ladder as lad
from . import numerics
from .errors import DegenerateSpectrum, DimensionMismatch

#: default scaled gap tolerance below which projectors refuse to form
GAP_TOL = 1e-8


@dataclass(frozen=True)
class TorusElement:
    """d(n-1) nonzero complex parameters, one per flowing flat index."""

    n: int
    zeta: np.ndarray

    def __post_init__(self):
        zeta = np.asarray(self.zeta, dtype=np.complex128)
        if zeta.shape != (lad.d(self.n - 1),):
            raise DimensionMismatch(
                f"need {lad.d(self.n - 1)} parameters for n={self.n}"
            )
        if np.any(zeta == 0):
            raise ValueError("torus parameters must be nonzero")
        object.__setattr__(self, "zeta", zeta)

    @classmethod
    def identity(cls, n):
        return cls(n, np.ones(lad.d(n - 1), dtype=np.complex128))

    def inverse(self):
        return TorusElement(self.n, 1.0 / self.zeta)

    def compose(self, other):
        """Componentwise product (the group law)."""
        if self.n != other.n:
            raise DimensionMismatch("torus elements of different size")
        return TorusElement(self.n, self.zeta * other.zeta)


def spectral_projector(xm, eigenvalue, spectrum, tol=GAP_TOL):
    """Lagrange projector of ``xm`` onto a simple eigenvalue.

    E = prod_{mu != nu} (xm - mu I) / (nu - mu) over the other spectrum
    entries.  Idempotent, commutes with xm, rank one; requires the spectrum
    pairwise distinct beyond ``tol`` (scaled) and the eigenvalue to appear
    exactly once.
    """
    xm = numerics.as_matrix(xm)
    spectrum = np.asarray(spectrum).astype(xm.dtype)
    m = xm.shape[0]
    if spectrum.shape != (m,):
        raise DimensionMismatch("spectrum length must match the matrix size")
    scale = 1.0 + float(np.max(np.abs(spectrum)))
    gap = tol * scale
    diff = np.abs(spectrum[:, None] - spectrum[None, :])
    np.fill_diagonal(diff, np.inf)
    if m > 1 and np.min(diff) <= gap:
        raise DegenerateSpectrum(
            f"spectrum gap {np.min(diff):.3e} at or below tolerance {gap:.3e}"
        )
    hits = np.flatnonzero(np.abs(spectrum - eigenvalue) <= gap)
    if len(hits) != 1:
        raise ValueError("eigenvalue must appear exactly once in the spectrum")
    nu = spectrum[hits[0]]
    proj = np.eye(m, dtype=xm.dtype)
    eye = np.eye(m, dtype=xm.dtype)
    for mu in np.delete(spectrum, hits[0]):
        proj = proj @ (xm - mu * eye) / (nu - mu)
    return proj


def padded_projector(z, j, tol=GAP_TOL):
    """Projector for flat index j of a covered point, padded to full size."""
    m, branch = lad.split_index(j, z.n)
    level = z.ladder.level(m)
    proj = spectral_projector(
        numerics.principal_minor(z.x, m), level[branch - 1], level, tol=tol
    )
    out = np.zeros_like(z.x)
    out[:m, :m] = proj
    return out


def _conjugate_level(x, m, level, factors, tol=GAP_TOL):
    """Conjugate ``x`` by the level-m element A = sum_l factors[l] E_l (+ I).

    The conjugator is block diagonal (A on the m-block, identity below), and
    A is a polynomial in the m-minor, so the conjugation leaves both
    diagonal blocks invariant *exactly*; only the off-diagonal strips are
    multiplied.  Exploiting that keeps ill-conditioned parameter sets from
    polluting the invariant blocks.  A^{-1} = sum_l factors[l]^{-1} E_l by
    orthogonality of the projectors.
    """
    n = x.shape[0]
    if m == n:
        return x.copy()  # polynomials in x commute with x: top level is inert
    xm = x[:m, :m]
    a = np.zeros((m, m), dtype=x.dtype)
    a_inv = np.zeros((m, m), dtype=x.dtype)
    for ell in range(m):
        proj = spectral_projector(xm, level[ell], level, tol=tol)
        a += factors[ell] * proj
        a_inv += proj / factors[ell]
    out = x.copy()
    out[:m, m:] = a @ x[:m, m:]
    out[m:, :m] = x[m:, :m] @ a_inv
    return out


def apply_torus_raw(x, levels, zeta, tol=GAP_TOL):
    """Dtype-generic core of the torus action on a bare array.

    ``levels[m-1]`` holds the stored level-m spectrum, ``zeta`` the
    d(n-1) parameters; levels are applied ascending with projectors of the
    current point.
    """
    n = x.shape[0]
    for m in range(1, n):
        factors = 1.0 / np.asarray(zeta[lad.d(m - 1) : lad.d(m)]).astype(x.dtype)
        if np.any(factors != 1.0):
            x = _conjugate_level(x, m, np.asarray(levels[m - 1]), factors, tol=tol)
    return x


def one_param_flow(z, j, q, tol=GAP_TOL, validate=True):
    """Flow the covered point for time ``q`` along the index-j field.

    Only j <= d(n-1) flows; top-level fields vanish identically, and asking
    for them is an index error.  The ladder is carried along unchanged
    (flows preserve every minor spectrum); with ``validate`` the output's
    minor spectra are re-extracted and matched against it, raising
    BranchMismatch on drift.
    """
    if not 1 <= j <= lad.d(z.n - 1):
        raise DimensionMismatch(
            f"flow index {j} out of range 1..{lad.d(z.n - 1)} "
            "(top-level fields vanish)"
        )
    m, branch = lad.split_index(j, z.n)
    factors = np.ones(m, dtype=np.complex128)
    factors[branch - 1] = np.exp(-complex(q))
    out = lad.CoveredPoint(
        _conjugate_level(z.x, m, z.ladder.level(m), factors, tol=tol), z.ladder
    )
    if validate:
        lad.check_covers(out)
    return out


def torus_apply(b, z, tol=GAP_TOL, validate=True):
    """Act by a torus element: the index-j flow at time log zeta_j, ascending j.

    The step-j conjugator is I + (zeta_j^{-1} - 1) E_j with E_j built from
    the current point; within a level the commuting steps compose exactly to
    A = sum_l zeta_l^{-1} E_l, so levels are applied as single block
    conjugations, ascending.  The flows commute, so the order is a
    reproducibility choice, not a requirement.
    """
    if b.n != z.n:
        raise DimensionMismatch("torus element and point have different size")
    x = apply_torus_raw(z.x, z.ladder.levels, b.zeta, tol=tol)
    out = lad.CoveredPoint(x, z.ladder)
    if validate:
        lad.check_covers(out)
    return out
