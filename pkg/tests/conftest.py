import numpy as np
import pytest

from gzkit import ladder as lad


def random_complex_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_omega_point(rng, n, gap=1e-2):
    """Random generic covered point (rejection on the scaled gap)."""
    while True:
        x = random_complex_matrix(rng, n)
        z = lad.extract_ladder(x)
        if lad.in_e_omega(z.ladder, tol=gap):
            return z


def random_gapped_ladder(rng, n, gap=0.1):
    """Random ladder whose within-level and adjacent-level gaps exceed ``gap``."""
    while True:
        levels = tuple(
            rng.uniform(-3, 3, size=m) + 1j * rng.uniform(-3, 3, size=m)
            for m in range(1, n + 1)
        )
        ladder = lad.Ladder(levels)
        if lad.in_e_omega(ladder, tol=gap / ladder.scale()):
            return ladder


def random_deck_element(rng, n):
    return lad.DeckElement(tuple(tuple(rng.permutation(m)) for m in range(1, n + 1)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
