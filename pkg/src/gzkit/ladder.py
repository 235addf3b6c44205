"""Eigenvalue ladders and the covering-space data model.

A ladder holds the spectra of all upper-left principal minors of a matrix,
level m holding the m eigenvalues of the m-by-m minor.  A covered point
pairs a matrix with one choice of ordering of every level (one sheet of the
eigenvalue cover); the deck group of per-level permutations moves between
sheets.

Flat indexing convention: the ladder entry nu_{k,m} (branch k of level m,
both 1-based) has flat index i = d(m-1) + k where d(m) = m(m+1)/2, so
i runs over 1..d(n).
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import BranchMismatch, DimensionMismatch, NotInOmega

#: default scaled gap tolerance for membership predicates
GAP_TOL = 1e-8
#: default threshold for matching recomputed spectra to a stored ladder
MATCH_TOL = 1e-6


def d(m):
    """Triangular number m(m+1)/2; the number of ladder entries up to level m."""
    if m < 0:
        raise DimensionMismatch("level count must be nonnegative")
    return m * (m + 1) // 2


def split_index(i, n):
    """Invert flat indexing: return (m, k), 1-based, with i = d(m-1) + k."""
    if not 1 <= i <= d(n):
        raise DimensionMismatch(f"flat index {i} out of range 1..{d(n)}")
    m = 1
    while d(m) < i:
        m += 1
    return m, i - d(m - 1)


def flat_index(m, k):
    """Flat index of branch k at level m (both 1-based)."""
    if not 1 <= k <= m:
        raise DimensionMismatch(f"branch {k} out of range 1..{m}")
    return d(m - 1) + k


@dataclass(frozen=True)
class Ladder:
    """Nested spectra: ``levels[m-1]`` holds the m entries of level m."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(
            np.asarray(level, dtype=np.complex128) for level in self.levels
        )
        for m, level in enumerate(levels, start=1):
            if level.ndim != 1 or len(level) != m:
                raise DimensionMismatch(f"level {m} must hold exactly {m} entries")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self):
        return len(self.levels)

    def level(self, m):
        """Entries of level m (1-based)."""
        if not 1 <= m <= self.n:
            raise DimensionMismatch(f"level {m} out of range 1..{self.n}")
        return self.levels[m - 1]

    def entry(self, m, k):
        """The entry nu_{k,m} (both indices 1-based)."""
        return complex(self.level(m)[k - 1])

    def flat(self):
        """All entries as one length-d(n) array in flat-index order."""
        return np.concatenate(self.levels)

    def restricted(self, m):
        """The sub-ladder of levels 1..m."""
        if not 1 <= m <= self.n:
            raise DimensionMismatch(f"level {m} out of range 1..{self.n}")
        return Ladder(self.levels[:m])

    def scale(self):
        """1 + largest entry magnitude (used to scale gap tolerances)."""
        return 1.0 + float(max(np.max(np.abs(level)) for level in self.levels))


def ladder_from_flat(values, n):
    """Rebuild a Ladder from a flat length-d(n) array."""
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != (d(n),):
        raise DimensionMismatch(f"expected {d(n)} values for n={n}")
    return Ladder(tuple(values[d(m - 1) : d(m)] for m in range(1, n + 1)))


@dataclass(frozen=True)
class CoveredPoint:
    """A matrix together with one ordered ladder of its minor spectra."""

    x: np.ndarray
    ladder: Ladder

    def __post_init__(self):
        x = numerics.as_matrix(self.x)
        if x.shape[0] != self.ladder.n:
            raise DimensionMismatch("matrix size and ladder depth disagree")
        object.__setattr__(self, "x", x)

    @property
    def n(self):
        return self.ladder.n


@dataclass(frozen=True)
class DeckElement:
    """One permutation per level; ``perms[m-1]`` is a 0-based image tuple."""

    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(p) for p in self.perms)
        for m, p in enumerate(perms, start=1):
            if sorted(p) != list(range(m)):
                raise DimensionMismatch(f"level {m} entry is not a permutation")
        object.__setattr__(self, "perms", perms)

    @property
    def n(self):
        return len(self.perms)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(range(m)) for m in range(1, n + 1)))

    def compose(self, other):
        """Function composition self after other, levelwise."""
        if self.n != other.n:
            raise DimensionMismatch("deck elements of different depth")
        return DeckElement(
            tuple(
                tuple(p[q[j]] for j in range(len(p)))
                for p, q in zip(self.perms, other.perms)
            )
        )

    def inverse(self):
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for j, pj in enumerate(p):
                inv[pj] = j
            out.append(tuple(inv))
        return DeckElement(tuple(out))


def extract_ladder(x, tol=numerics.DEFAULT_ROOT_TOL):
    """Covered point over ``x`` with every level in canonical spectral order.

    The cover has no preferred sheet; the canonical order just fixes one
    reproducibly.  ``deck_apply`` reaches the others.
    """
    x = numerics.as_matrix(x)
    levels = tuple(
        numerics.eigenvalues(numerics.principal_minor(x, m), tol=tol)
        for m in range(1, x.shape[0] + 1)
    )
    return CoveredPoint(x, Ladder(levels))


def r(z, i):
    """Eigenvalue coordinate with flat index i: the entry nu_{k,m} of z's ladder."""
    m, k = split_index(i, z.n)
    return z.ladder.entry(m, k)


def in_e_omega(ladder, tol=GAP_TOL):
    """Membership in the generic ladder stratum.

    True iff every level has pairwise-distinct entries and adjacent levels
    share no entry, all gaps measured against ``tol * (1 + max |entry|)``.
    """
    gap = tol * ladder.scale()
    for m in range(1, ladder.n + 1):
        level = ladder.level(m)
        diff = np.abs(level[:, None] - level[None, :])
        np.fill_diagonal(diff, np.inf)
        if diff.size and np.min(diff) <= gap:
            return False
        if m < ladder.n:
            nxt = ladder.level(m + 1)
            if np.min(np.abs(level[:, None] - nxt[None, :])) <= gap:
                return False
    return True


def in_M_omega(x, tol=GAP_TOL):
    """True iff all minors have simple spectra and adjacent spectra are disjoint."""
    return in_e_omega(extract_ladder(x).ladder, tol=tol)


def deck_apply(sigma, z):
    """Relabel ladder branches: level m entry k moves to slot sigma_m(k).

    The matrix is untouched; only the sheet changes.  With ``p`` the 0-based
    image tuple of level m, ``new[p[j]] = old[j]``.
    """
    if sigma.n != z.n:
        raise DimensionMismatch("deck element and point have different depth")
    new_levels = []
    for p, level in zip(sigma.perms, z.ladder.levels):
        new = np.empty_like(level)
        new[np.asarray(p)] = level
        new_levels.append(new)
    return CoveredPoint(z.x, Ladder(tuple(new_levels)))


def ladder_to_charpolys(ladder):
    """Monic coefficient arrays whose roots are the ladder levels.

    The coefficients are (up to sign) the elementary symmetric functions of
    the level entries, matching the characteristic polynomials of the minors
    of any matrix the ladder covers.
    """
    return [numerics.poly_from_roots(ladder.level(m)) for m in range(1, ladder.n + 1)]


def power_sum(z, i):
    """Normalized power sum over the level of flat index i.

    With (m, k) = split_index(i): sum of nu^(m+1-k) over level m, divided by
    m+1-k.  These generate the same function algebra as the char-poly
    coefficients, with gradients given by powers of the minor.
    """
    m, k = split_index(i, z.n)
    e = m + 1 - k
    return complex(np.sum(z.ladder.level(m) ** e) / e)


def match_to_reference(values, reference, threshold=None):
    """Greedy nearest-match reorder of ``values`` onto ``reference``.

    Returns the reordered array.  If ``threshold`` is given and some match
    exceeds it, raises BranchMismatch.
    """
    values = np.asarray(values)
    if not np.issubdtype(values.dtype, np.complexfloating):
        values = values.astype(np.complex128)
    reference = np.asarray(reference)
    if values.shape != reference.shape:
        raise DimensionMismatch("cannot match levels of different size")
    out = np.empty_like(values)
    used = np.zeros(len(values), dtype=bool)
    for idx, target in enumerate(reference):
        dist = np.abs(values - target)
        dist[used] = np.inf
        best = int(np.argmin(dist))
        if threshold is not None and dist[best] > threshold:
            raise BranchMismatch(
                f"no spectrum entry within {threshold:.3e} of {target}"
            )
        out[idx] = values[best]
        used[best] = True
    return out


def covered_point_on_sheet(x, reference, tol=numerics.DEFAULT_ROOT_TOL, threshold=None):
    """Covered point over ``x`` on the sheet nearest to ``reference``.

    Each recomputed level is reordered by greedy nearest-match against the
    reference ladder.  Used to keep finite differences and flows on one sheet.
    """
    z = extract_ladder(x, tol=tol)
    matched = tuple(
        match_to_reference(level, ref, threshold=threshold)
        for level, ref in zip(z.ladder.levels, reference.levels)
    )
    return CoveredPoint(z.x, Ladder(matched))


def check_covers(z, threshold=MATCH_TOL, tol=numerics.DEFAULT_ROOT_TOL):
    """Verify the covered-point invariant: stored ladder == minor spectra.

    Matching is greedy nearest-match per level with an absolute threshold
    scaled by the ladder size; failure raises BranchMismatch.
    """
    fresh = extract_ladder(z.x, tol=tol)
    bound = threshold * z.ladder.scale()
    for level, stored in zip(fresh.ladder.levels, z.ladder.levels):
        match_to_reference(level, stored, threshold=bound)


def require_membership(x_or_z, tol=GAP_TOL):
    """Raise NotInOmega unless the point passes the membership predicate."""
    ladder = x_or_z.ladder if isinstance(x_or_z, CoveredPoint) else None
    if ladder is None:
        if not in_M_omega(x_or_z, tol=tol):
            raise NotInOmega("minor spectra collide within tolerance")
    elif not in_e_omega(ladder, tol=tol):
        raise NotInOmega("ladder fails the generic-stratum condition")
