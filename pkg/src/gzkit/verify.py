"""Machine verification of the commutation relations and flow laws.

Backs both ``gzkit verify`` and the acceptance test suite.  All residuals
are returned pre-scaled by the denominators of their defining relations, so
a report entry passes iff residual <= tol.

Relations checked per sample point:

  r_r                max |{r_i, r_j}| / (1 + |x|)             analytic gradients
  r_s                max |{r_i, s_j} - d_ij s_j| / (1 + |s_j|)     FD s-gradients
  s_s                max |{s_i, s_j}| / (1 + |s_i s_j|)
  conjugate_pairs    max |{r_i/s_i, s_j} - d_ij|
  casimir            top-level r against every coordinate, / (1 + |x|)
  ladder_drift       spectra drift under a finite-time flow
  periodicity        flow at 2 pi i returns the point
  order_independence two random orderings of the full flow composite
  flow_coordinate    s_j(flow_i(q, z)) = e^(d_ij q) s_j(z)
  roundtrip          unchart(chart(x)) = x and chart(unchart(p)) = p
"""

import numpy as np

from . import charts
from . import flows, hessenberg, ladder as lad, numerics, poisson
from .errors import SamplingFailure

#: scaled minor-spectrum gap below which samples are rejected (keeps finite
#: differences and the peel well-conditioned at desk scale)
SAMPLE_GAP = 1e-2
#: retry cap for rejection sampling
MAX_DRAWS = 1000


def sample_omega_member(n, rng, gap=SAMPLE_GAP, max_draws=MAX_DRAWS):
    """Draw a random generic covered point with standard Gaussian entries.

    The generic locus is dense, so acceptance is near certain; the gap floor
    additionally rejects nearly-degenerate draws that would make derivative
    checks meaningless in double precision.
    """
    for _ in range(max_draws):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        z = lad.extract_ladder(x)
        if lad.in_e_omega(z.ladder, tol=gap):
            return z
    raise SamplingFailure(f"{max_draws} consecutive draws failed the gap floor")


def _max_abs(x):
    return float(np.max(np.abs(x)))


def bracket_tables(z, h=None):
    """Scaled residuals of all bracket relations at one point.

    Eigenvalue gradients are analytic (padded projectors); dual-coordinate
    gradients are central differences on the tracked sheet, shared across
    every pair through one Jacobian sweep.
    """
    x = z.x
    n = z.n
    dn, dn1 = lad.d(n), lad.d(n - 1)
    xscale = 1.0 + _max_abs(x)

    r_grads = [poisson.grad_r(z, i) for i in range(1, dn + 1)]
    s_vals = charts.compute_s(z)
    s_jac = charts.s_jacobian(z, h=h)
    r_vals = z.ladder.flat()

    def br(a, b):
        return complex(np.einsum("ij,ji->", x, a @ b - b @ a))

    rr = max(
        (
            abs(br(r_grads[i], r_grads[j]))
            for i in range(dn)
            for j in range(i + 1, dn)
        ),
        default=0.0,
    )
    rs = max(
        abs(br(r_grads[i], s_jac[j]) - (s_vals[j] if i == j else 0.0))
        / (1.0 + abs(s_vals[j]))
        for i in range(dn)
        for j in range(dn1)
    )
    ss = max(
        (
            abs(br(s_jac[i], s_jac[j])) / (1.0 + abs(s_vals[i] * s_vals[j]))
            for i in range(dn1)
            for j in range(i + 1, dn1)
        ),
        default=0.0,
    )

    momentum_grads = [
        r_grads[i] / s_vals[i] - (r_vals[i] / s_vals[i] ** 2) * s_jac[i]
        for i in range(dn1)
    ]
    pairs = max(
        abs(br(momentum_grads[i], s_jac[j]) - (1.0 if i == j else 0.0))
        for i in range(dn1)
        for j in range(dn1)
    )

    casimir = 0.0
    for i in range(dn1, dn):  # top-level eigenvalue coordinates
        for j in range(dn):
            casimir = max(casimir, abs(br(r_grads[i], r_grads[j])))
        for j in range(dn1):
            casimir = max(casimir, abs(br(r_grads[i], s_jac[j])))
            casimir = max(casimir, abs(br(r_grads[i], momentum_grads[j])))

    return {
        "r_r": rr / xscale,
        "r_s": rs,
        "s_s": ss,
        "conjugate_pairs": pairs,
        "casimir": casimir / xscale,
    }


def ladder_drift(z, j, q):
    """Largest matched distance between stored and recomputed spectra after a flow."""
    out = flows.one_param_flow(z, j, q, validate=False)
    fresh = lad.extract_ladder(out.x)
    return max(
        _max_abs(lad.match_to_reference(level, ref) - ref)
        for level, ref in zip(fresh.ladder.levels, z.ladder.levels)
    )


def flow_tables(z, rng):
    """Scaled residuals of the flow laws at one point."""
    n = z.n
    dn1 = lad.d(n - 1)
    xscale = 1.0 + _max_abs(z.x)

    j = int(rng.integers(1, dn1 + 1))
    q = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    q *= 5.0 / max(1.0, abs(q))  # finite time, up to the |q| <= 5 regime
    drift = ladder_drift(z, j, q)

    periodic = flows.one_param_flow(z, j, 2j * np.pi, validate=False)
    periodicity = _max_abs(periodic.x - z.x)

    zeta = np.exp(0.5 * (rng.standard_normal(dn1) + 1j * rng.standard_normal(dn1)))
    logs = np.log(zeta)
    orders = [rng.permutation(dn1), rng.permutation(dn1)]
    results = []
    for order in orders:
        cur = z
        for idx in order:
            cur = flows.one_param_flow(cur, int(idx) + 1, logs[idx], validate=False)
        results.append(cur.x)
    order_independence = _max_abs(results[0] - results[1])

    s0 = charts.compute_s(z)
    i = int(rng.integers(1, dn1 + 1))
    qf = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    qf *= 2.0 / max(1.0, abs(qf))
    s1 = charts.compute_s(flows.one_param_flow(z, i, qf, validate=False))
    expected = s0.copy()
    expected[i - 1] *= np.exp(qf)
    flow_coordinate = float(
        np.max(np.abs(s1 - expected) / (1.0 + np.abs(expected)))
    )

    p = charts.chart(z.x)
    forward = _max_abs(charts.unchart(p) - z.x) / xscale
    p2 = charts.chart(charts.unchart(p))
    backward = max(_max_abs(p2.r - p.r), _max_abs(p2.s - p.s)) / (
        1.0 + max(_max_abs(p.r), _max_abs(p.s))
    )
    roundtrip = max(forward, backward)

    return {
        "ladder_drift": drift,
        "periodicity": periodicity,
        "order_independence": order_independence,
        "flow_coordinate": flow_coordinate,
        "roundtrip": roundtrip,
    }


def reconstruction_residual(ladder):
    """Largest relative char-poly coefficient error of the rebuilt section point."""
    y = hessenberg.reconstruct(ladder)
    worst = 0.0
    for m in range(1, ladder.n + 1):
        target = numerics.poly_from_roots(ladder.level(m))
        got = numerics.charpoly(numerics.principal_minor(y, m))
        worst = max(worst, _max_abs(got - target) / max(1.0, _max_abs(target)))
    return worst


def verification_report(n, seed, samples, tol, h=None):
    """Aggregate residuals over random generic points; one row per relation."""
    rng = np.random.default_rng(seed)
    residuals = {}
    for _ in range(samples):
        z = sample_omega_member(n, rng)
        tables = bracket_tables(z, h=h)
        tables.update(flow_tables(z, rng))
        for key, value in tables.items():
            residuals[key] = max(residuals.get(key, 0.0), float(value))
    passed = {key: bool(value <= tol) for key, value in residuals.items()}
    return {
        "n": n,
        "seed": seed,
        "samples": samples,
        "tol": tol,
        "residuals": residuals,
        "pass": passed,
        "ok": all(passed.values()),
    }
