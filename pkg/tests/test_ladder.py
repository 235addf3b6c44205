import json

import numpy as np
import pytest

from gzkit import flows, jsonio, ladder as lad, numerics
from gzkit.errors import BranchMismatch, DimensionMismatch

from conftest import random_deck_element, random_omega_point

SWAP = np.array([[0, 1], [1, 0]], dtype=complex)
TRIDIAG = np.array([[0, 1, 0], [1, 0, 3], [0, 1, 0]], dtype=complex)


class TestIndexing:
    @pytest.mark.parametrize("m,expected", [(0, 0), (3, 6), (4, 10)])
    def test_triangular_numbers(self, m, expected):
        assert lad.d(m) == expected

    @pytest.mark.parametrize(
        "i,n,expected", [(1, 2, (1, 1)), (3, 2, (2, 2)), (5, 3, (3, 2))]
    )
    def test_split_index(self, i, n, expected):
        assert lad.split_index(i, n) == expected

    def test_split_index_range(self):
        with pytest.raises(DimensionMismatch):
            lad.split_index(0, 3)
        with pytest.raises(DimensionMismatch):
            lad.split_index(7, 3)

    def test_split_is_inverse_of_flat(self):
        for n in range(1, 7):
            for i in range(1, lad.d(n) + 1):
                m, k = lad.split_index(i, n)
                assert lad.flat_index(m, k) == i


class TestExtraction:
    def test_swap_matrix(self):
        z = lad.extract_ladder(SWAP)
        np.testing.assert_allclose(z.ladder.level(1), [0], atol=1e-14)
        np.testing.assert_allclose(z.ladder.level(2), [-1, 1], atol=1e-12)

    def test_diagonal(self):
        z = lad.extract_ladder(np.diag([1.0 + 0j, 2.0]))
        np.testing.assert_allclose(z.ladder.level(1), [1], atol=1e-14)
        np.testing.assert_allclose(z.ladder.level(2), [1, 2], atol=1e-12)

    def test_tridiagonal(self):
        z = lad.extract_ladder(TRIDIAG)
        np.testing.assert_allclose(z.ladder.level(2), [-1, 1], atol=1e-12)
        np.testing.assert_allclose(z.ladder.level(3), [-2, 0, 2], atol=1e-11)

    def test_eigenvalue_coordinates(self):
        z = lad.extract_ladder(SWAP)
        assert abs(lad.r(z, 1) - 0) < 1e-12
        assert abs(lad.r(z, 2) - (-1)) < 1e-12
        assert abs(lad.r(z, 3) - 1) < 1e-12

    def test_power_sums(self):
        z = lad.extract_ladder(SWAP)
        assert abs(lad.power_sum(z, 3)) < 1e-12  # exponent 1 over {-1, 1}
        assert abs(lad.power_sum(z, 2) - 1) < 1e-12  # exponent 2, prefactor 1/2
        z1 = lad.extract_ladder(np.array([[5.0 + 0j]]))
        assert abs(lad.power_sum(z1, 1) - 5) < 1e-14


class TestMembership:
    def test_generic_ladder(self):
        assert lad.in_e_omega(lad.Ladder(([0], [-1, 1])))

    def test_adjacent_collision(self):
        assert not lad.in_e_omega(lad.Ladder(([1], [1, 2])))
        assert not lad.in_e_omega(lad.Ladder(([0], [0, 1])))

    def test_matrix_predicate(self):
        assert lad.in_M_omega(SWAP)
        assert not lad.in_M_omega(np.diag([1.0 + 0j, 2.0]))
        assert lad.in_M_omega(np.ones((2, 2), dtype=complex))  # ladder [[1],[0,2]]

    def test_membership_torus_invariant(self, rng):
        z = random_omega_point(rng, 4)
        zeta = np.exp(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        moved = flows.torus_apply(flows.TorusElement(4, zeta), z)
        assert lad.in_M_omega(moved.x)
        fresh = lad.extract_ladder(moved.x)
        for a, b in zip(fresh.ladder.levels, z.ladder.levels):
            np.testing.assert_allclose(
                lad.match_to_reference(a, b), b, atol=1e-9
            )


class TestDeckAction:
    def test_identity(self):
        z = lad.extract_ladder(SWAP)
        same = lad.deck_apply(lad.DeckElement.identity(2), z)
        np.testing.assert_array_equal(same.ladder.level(2), z.ladder.level(2))

    def test_swap_level_two(self):
        z = lad.extract_ladder(SWAP)
        sigma = lad.DeckElement(((0,), (1, 0)))
        flipped = lad.deck_apply(sigma, z)
        np.testing.assert_array_equal(flipped.ladder.level(2), [1, -1])
        np.testing.assert_array_equal(flipped.x, z.x)
        again = lad.deck_apply(sigma, flipped)
        np.testing.assert_array_equal(again.ladder.level(2), z.ladder.level(2))

    def test_group_action(self, rng):
        z = random_omega_point(rng, 4)
        for _ in range(5):
            sigma = random_deck_element(rng, 4)
            tau = random_deck_element(rng, 4)
            lhs = lad.deck_apply(sigma, lad.deck_apply(tau, z))
            rhs = lad.deck_apply(sigma.compose(tau), z)
            for a, b in zip(lhs.ladder.levels, rhs.ladder.levels):
                np.testing.assert_array_equal(a, b)

    def test_eigenvalue_permutation_rule(self, rng):
        z = random_omega_point(rng, 4)
        sigma = random_deck_element(rng, 4)
        moved = lad.deck_apply(sigma, z)
        for m in range(1, 5):
            perm = sigma.perms[m - 1]
            inv = [perm.index(k) for k in range(m)]
            for k in range(1, m + 1):
                assert lad.r(moved, lad.flat_index(m, k)) == lad.r(
                    z, lad.flat_index(m, inv[k - 1] + 1)
                )

    def test_inverse(self, rng):
        sigma = random_deck_element(rng, 5)
        both = sigma.compose(sigma.inverse())
        assert both.perms == lad.DeckElement.identity(5).perms


class TestCharpolyBridge:
    def test_expansion_examples(self):
        polys = lad.ladder_to_charpolys(lad.Ladder(([0], [-1, 1])))
        np.testing.assert_allclose(polys[0], [1, 0], atol=1e-15)
        np.testing.assert_allclose(polys[1], [1, 0, -1], atol=1e-15)
        polys = lad.ladder_to_charpolys(lad.Ladder(([2], [1, 3])))
        np.testing.assert_allclose(polys[0], [1, -2], atol=1e-15)
        np.testing.assert_allclose(polys[1], [1, -4, 3], atol=1e-15)
        polys = lad.ladder_to_charpolys(lad.Ladder(([3 + 1j],)))
        np.testing.assert_allclose(polys[0], [1, -3 - 1j], atol=1e-15)

    def test_roundtrip_against_minors(self, rng):
        z = random_omega_point(rng, 5)
        polys = lad.ladder_to_charpolys(z.ladder)
        for m in range(1, 6):
            direct = numerics.charpoly(numerics.principal_minor(z.x, m))
            scale = np.max(np.abs(direct))
            np.testing.assert_allclose(polys[m - 1], direct, atol=1e-9 * scale)


class TestCoveredPointChecks:
    def test_check_covers_accepts_extraction(self, rng):
        z = random_omega_point(rng, 4)
        lad.check_covers(z)

    def test_corrupted_ladder_rejected(self, rng):
        z = random_omega_point(rng, 3)
        levels = [level.copy() for level in z.ladder.levels]
        levels[2][0] += 0.5
        bad = lad.CoveredPoint(z.x, lad.Ladder(tuple(levels)))
        with pytest.raises(BranchMismatch):
            lad.check_covers(bad)

    def test_sheet_tracking(self, rng):
        z = random_omega_point(rng, 4)
        sigma = random_deck_element(rng, 4)
        sheet = lad.deck_apply(sigma, z)
        tracked = lad.covered_point_on_sheet(z.x, sheet.ladder)
        for a, b in zip(tracked.ladder.levels, sheet.ladder.levels):
            np.testing.assert_allclose(a, b, atol=1e-10)


class TestJsonForm:
    def test_roundtrip(self, rng):
        z = random_omega_point(rng, 4)
        blob = json.dumps(jsonio.ladder_to_json(z.ladder))
        back = jsonio.ladder_from_json(json.loads(blob))
        for a, b in zip(back.levels, z.ladder.levels):
            np.testing.assert_array_equal(a, b)
