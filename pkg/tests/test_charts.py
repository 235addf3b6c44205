import numpy as np
import pytest

from gzkit import charts, flows, hessenberg, ladder as lad, numerics, poisson
from gzkit.errors import DimensionMismatch, NonGenericPoint, NotInOmega

from conftest import random_deck_element, random_gapped_ladder, random_omega_point

SWAP = np.array([[0, 1], [1, 0]], dtype=complex)
SCALED = np.array([[0, 2], [0.5, 0]], dtype=complex)


class TestComputeS:
    def test_section_gives_ones(self, rng):
        ladder = random_gapped_ladder(rng, 5)
        y = hessenberg.reconstruct(ladder)
        s = charts.compute_s(lad.CoveredPoint(y, ladder))
        np.testing.assert_allclose(s, np.ones(lad.d(4)), atol=1e-10)

    def test_two_by_two_scaled(self):
        z = lad.extract_ladder(SCALED)
        np.testing.assert_allclose(charts.compute_s(z), [0.5], atol=1e-12)

    def test_matches_flow_time(self):
        # the scaled point is the time -log 2 flow of the section point
        z = lad.extract_ladder(SWAP)
        out = flows.one_param_flow(z, 1, -np.log(2))
        np.testing.assert_allclose(out.x, SCALED, atol=1e-14)
        np.testing.assert_allclose(charts.compute_s(out), [0.5], atol=1e-12)

    def test_roundtrip_against_torus(self, rng):
        z = random_omega_point(rng, 5)
        dn1 = lad.d(4)
        zeta = np.exp(0.5 * (rng.standard_normal(dn1) + 1j * rng.standard_normal(dn1)))
        s0 = charts.compute_s(z)
        moved = flows.torus_apply(flows.TorusElement(5, zeta), z)
        np.testing.assert_allclose(charts.compute_s(moved), zeta * s0, atol=1e-8)

    def test_requires_membership(self):
        z = lad.CoveredPoint(np.diag([1.0 + 0j, 2.0]), lad.Ladder(([1], [1, 2])))
        with pytest.raises(NotInOmega):
            charts.compute_s(z)

    def test_non_generic_column(self):
        x = np.array([[0, 1e-5], [1, 3]], dtype=complex)
        z = lad.extract_ladder(x)
        with pytest.raises(NonGenericPoint):
            charts.compute_s(z, tol=1e-3)


class TestChartMaps:
    def test_section_point(self):
        p = charts.chart(SWAP)
        np.testing.assert_allclose(p.r, [0, -1, 1], atol=1e-12)
        np.testing.assert_allclose(p.s, [1], atol=1e-12)

    def test_scaled_point(self):
        p = charts.chart(SCALED)
        np.testing.assert_allclose(p.r, [0, -1, 1], atol=1e-12)
        np.testing.assert_allclose(p.s, [0.5], atol=1e-12)

    def test_symmetric_point(self):
        p = charts.chart(np.array([[2, 1], [1, 2]], dtype=complex))
        np.testing.assert_allclose(p.r, [2, 1, 3], atol=1e-12)
        np.testing.assert_allclose(p.s, [1], atol=1e-12)

    def test_unchart_examples(self):
        x = charts.unchart(charts.ChartPoint(2, [0, -1, 1], [1.0]))
        np.testing.assert_allclose(x, SWAP, atol=1e-12)
        x = charts.unchart(charts.ChartPoint(2, [0, -1, 1], [0.5]))
        np.testing.assert_allclose(x, SCALED, atol=1e-12)
        x = charts.unchart(charts.ChartPoint(2, [2, 1, 3], [1.0]))
        np.testing.assert_allclose(x, [[2, 1], [1, 2]], atol=1e-12)

    def test_bijectivity(self, rng):
        for n in (2, 4, 6):
            z = random_omega_point(rng, n)
            p = charts.chart(z.x)
            np.testing.assert_allclose(charts.unchart(p), z.x, atol=1e-8)
        for n in (3, 5):
            # build on the canonical sheet: chart always extracts that one
            ladder = lad.Ladder(
                tuple(
                    numerics.sort_spectrum(level)
                    for level in random_gapped_ladder(rng, n).levels
                )
            )
            dn1 = lad.d(n - 1)
            s = np.exp(0.4 * (rng.standard_normal(dn1) + 1j * rng.standard_normal(dn1)))
            p = charts.ChartPoint(n, ladder.flat(), s)
            p2 = charts.chart(charts.unchart(p))
            np.testing.assert_allclose(p2.r, p.r, atol=1e-8)
            np.testing.assert_allclose(p2.s, p.s, atol=1e-8)

    def test_chart_rejects_nonmember(self):
        with pytest.raises(NotInOmega):
            charts.chart(np.diag([1.0 + 0j, 2.0]))

    def test_unchart_rejects_collision(self):
        with pytest.raises(NotInOmega):
            charts.unchart(charts.ChartPoint(2, [1, 1, 2], [1.0]))

    def test_chartpoint_rejects_zero_s(self):
        with pytest.raises(ValueError):
            charts.ChartPoint(2, [0, -1, 1], [0.0])

    def test_momentum_coordinates(self):
        p = charts.ChartPoint(2, [1, -1, 1], [0.5])
        assert charts.r_over_s(p, 1) == 2.0
        with pytest.raises(DimensionMismatch):
            charts.r_over_s(p, 2)


class TestFlowCoordinateLaw:
    def test_exponential_scaling(self, rng):
        z = random_omega_point(rng, 4)
        s0 = charts.compute_s(z)
        for i, q in ((2, 0.8), (5, -0.4 + 1.1j), (1, 2j)):
            out = flows.one_param_flow(z, i, q, validate=False)
            s1 = charts.compute_s(out)
            expected = s0.copy()
            expected[i - 1] *= np.exp(q)
            np.testing.assert_allclose(s1, expected, atol=1e-8 * (1 + np.abs(s0)).max())


class TestBracketTable:
    def test_relations_via_public_gradients(self, rng):
        # [r_i, s_j] = d_ij s_j and [s_i, s_j] = 0 through grad_fd
        z = random_omega_point(rng, 3)
        scale = 1 + np.max(np.abs(z.x))
        s_vals = charts.compute_s(z)
        s_fns = [charts.s_function(z, j) for j in range(1, 4)]
        r_fns = [poisson.r_function(z, i) for i in range(1, 7)]
        for i in range(6):
            for j in range(3):
                got = poisson.bracket(r_fns[i], s_fns[j], z.x)
                want = s_vals[j] if i == j else 0.0
                assert abs(got - want) <= 1e-6 * scale
        for i in range(3):
            for j in range(3):
                got = poisson.bracket(s_fns[i], s_fns[j], z.x)
                assert abs(got) <= 1e-6 * scale

    def test_conjugate_pairs_jacobian(self, rng):
        z = random_omega_point(rng, 4)
        dn1 = lad.d(3)
        s = charts.compute_s(z)
        rv = z.ladder.flat()
        jac = charts.s_jacobian(z)
        for i in range(dn1):
            momentum_grad = (
                poisson.grad_r(z, i + 1) / s[i] - (rv[i] / s[i] ** 2) * jac[i]
            )
            for j in range(dn1):
                got = poisson.trace_form(
                    z.x, momentum_grad @ jac[j] - jac[j] @ momentum_grad
                )
                assert abs(got - (1.0 if i == j else 0.0)) <= 1e-6


class TestEquivariance:
    def test_deck_permutes_r_and_s(self, rng):
        z = random_omega_point(rng, 4)
        sigma = random_deck_element(rng, 4)
        moved = lad.deck_apply(sigma, z)
        s0 = charts.compute_s(z)
        s1 = charts.compute_s(moved)
        for m in range(1, 4):
            perm = sigma.perms[m - 1]
            inv = [perm.index(k) for k in range(m)]
            for k in range(m):
                i_moved = lad.d(m - 1) + k
                i_orig = lad.d(m - 1) + inv[k]
                assert abs(s1[i_moved] - s0[i_orig]) < 1e-8

    def test_torus_monomial_scaling(self, rng):
        z = random_omega_point(rng, 4)
        dn1 = lad.d(3)
        zeta = np.exp(0.4 * (rng.standard_normal(dn1) + 1j * rng.standard_normal(dn1)))
        alpha = rng.integers(-2, 3, size=dn1)
        s0 = charts.compute_s(z)
        s1 = charts.compute_s(flows.torus_apply(flows.TorusElement(4, zeta), z))
        lhs = np.prod(s1**alpha)
        rhs = np.prod(zeta**alpha) * np.prod(s0**alpha)
        assert abs(lhs - rhs) <= 1e-8 * (1 + abs(rhs))

    def test_top_level_casimirs(self, rng):
        z = random_omega_point(rng, 4)
        s = charts.compute_s(z)
        jac = charts.s_jacobian(z)
        scale = 1 + np.max(np.abs(z.x))
        tops = [poisson.grad_r(z, i) for i in range(lad.d(3) + 1, lad.d(4) + 1)]
        others = [poisson.grad_r(z, i) for i in range(1, lad.d(4) + 1)]
        others.extend(jac)
        worst = max(
            abs(poisson.trace_form(z.x, a @ b - b @ a))
            for a in tops
            for b in others
        )
        assert worst <= 1e-7 * scale
