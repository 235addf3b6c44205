"""Lie-Poisson structure on n-by-n matrices via the trace form.

Conventions (fixed once, everything downstream is sign-consistent):

  * gradients satisfy df(E) = tr(grad_f(x) E) for every direction E,
    i.e. grad_f[j, i] = df/dx_{ij};
  * bracket(f, g)(x) = tr(x [grad_f, grad_g]);
  * the Hamiltonian field of f is x -> [x, grad_f(x)].

With these choices the field of an eigenvalue coordinate is [x, E] for the
padded spectral projector E, whose integral curve is exactly the projector
conjugation implemented in ``flows``.

Functions are assumed holomorphic, so complex derivatives are recovered
from real-step central differences along each entry.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import flows, ladder as lad, numerics
from .errors import DimensionMismatch

#: finite-difference step factor (times 1 + max|entry|)
FD_STEP = 1e-6


@dataclass(frozen=True)
class MatrixFunction:
    """A scalar function of a matrix, optionally with an analytic gradient."""

    evaluator: Callable[[np.ndarray], complex]
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = ""

    def __call__(self, x):
        return self.evaluator(x)


def _as_function(f):
    return f if isinstance(f, MatrixFunction) else MatrixFunction(f)


def trace_form(a, b):
    """tr(ab); the invariant pairing identifying matrices with functionals."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("trace form needs equal square matrices")
    return complex(np.einsum("ij,ji->", a, b))


def fd_step(x, h=None):
    return FD_STEP * (1.0 + float(np.max(np.abs(x)))) if h is None else h


def grad_fd(f, x, h=None):
    """Finite-difference gradient with tr-pairing layout.

    Central differences with a real step along each entry; valid for
    holomorphic f.  Returns G with G[j, i] = df/dx_{ij}, so that
    tr(G E) approximates the derivative of f along any direction E.
    """
    f = _as_function(f)
    x = numerics.as_matrix(x)
    h = fd_step(x, h)
    n = x.shape[0]
    grad = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            xp = x.copy()
            xp[i, j] += h
            xm = x.copy()
            xm[i, j] -= h
            grad[j, i] = (f(xp) - f(xm)) / (2.0 * h)
    return grad


def gradient(f, x, h=None):
    """Analytic gradient when declared, finite differences otherwise."""
    f = _as_function(f)
    if f.grad is not None:
        return f.grad(numerics.as_matrix(x))
    return grad_fd(f, x, h)


def grad_r(z, i, tol=flows.GAP_TOL):
    """Gradient of the flat-index-i eigenvalue coordinate: the padded projector.

    First-order perturbation of a simple eigenvalue nu of the minor gives
    d nu(E) = tr(P E_m) with P the spectral projector, so the gradient in
    tr-pairing layout is P embedded in the full-size zero matrix.
    """
    return flows.padded_projector(z, i, tol=tol)


def bracket(f, g, x, h=None):
    """Poisson bracket tr(x [grad_f, grad_g]) at ``x``."""
    x = numerics.as_matrix(x)
    gf = gradient(f, x, h)
    gg = gradient(g, x, h)
    return trace_form(x, gf @ gg - gg @ gf)


def hamiltonian_field(f, x, h=None):
    """The derivation of f as a matrix field: [x, grad_f(x)]."""
    x = numerics.as_matrix(x)
    gf = gradient(f, x, h)
    return x @ gf - gf @ x


def coordinate_function(i, j):
    """The entry function x -> x_{ij} (0-based) with its exact gradient."""

    def grad(x):
        g = np.zeros_like(x)
        g[j, i] = 1.0
        return g

    return MatrixFunction(lambda x: complex(x[i, j]), grad, name=f"x[{i},{j}]")


def r_function(z, i, tol=flows.GAP_TOL):
    """The flat-index-i eigenvalue as a sheet-tracked MatrixFunction.

    Evaluation on a perturbed matrix re-extracts the minor spectrum and
    nearest-matches it to the ladder of ``z``, staying on z's sheet; the
    analytic gradient is the padded projector at the evaluation point.
    """
    m, k = lad.split_index(i, z.n)
    reference = z.ladder

    def evaluate(x):
        zx = lad.covered_point_on_sheet(x, reference)
        return zx.ladder.entry(m, k)

    def grad(x):
        zx = lad.covered_point_on_sheet(x, reference)
        return flows.padded_projector(zx, i, tol=tol)

    return MatrixFunction(evaluate, grad, name=f"r_{i}")
