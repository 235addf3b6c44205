"""Gelfand-Zeitlin integrable system on complex matrices.

Eigenvalue ladders of nested principal minors, Hessenberg reconstruction,
exactly integrated ladder flows, the torus action on generic fibers, and the
(r, s) coordinate chart with its Poisson relations.
"""

from ._backend import COMPILED
from .charts import ChartPoint, chart, compute_s, r_over_s, unchart
from .errors import (
    BranchMismatch,
    ConvergenceFailure,
    DegenerateSpectrum,
    DimensionMismatch,
    GZError,
    NonGenericPoint,
    NotInOmega,
    NumericalInstability,
    SamplingFailure,
)
from .flows import TorusElement, one_param_flow, spectral_projector, torus_apply
from .hessenberg import is_hessenberg, reconstruct
from .ladder import (
    CoveredPoint,
    DeckElement,
    Ladder,
    d,
    deck_apply,
    extract_ladder,
    in_M_omega,
    in_e_omega,
    ladder_to_charpolys,
    power_sum,
    r,
    split_index,
)
from .numerics import charpoly, eigenvalues, polyroots, principal_minor
from .poisson import (
    MatrixFunction,
    bracket,
    grad_fd,
    grad_r,
    hamiltonian_field,
    trace_form,
)

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "BranchMismatch",
    "ChartPoint",
    "ConvergenceFailure",
    "CoveredPoint",
    "DeckElement",
    "DegenerateSpectrum",
    "DimensionMismatch",
    "GZError",
    "Ladder",
    "MatrixFunction",
    "NonGenericPoint",
    "NotInOmega",
    "NumericalInstability",
    "SamplingFailure",
    "TorusElement",
    "bracket",
    "chart",
    "charpoly",
    "compute_s",
    "d",
    "deck_apply",
    "eigenvalues",
    "extract_ladder",
    "grad_fd",
    "grad_r",
    "hamiltonian_field",
    "in_M_omega",
    "in_e_omega",
    "is_hessenberg",
    "ladder_to_charpolys",
    "one_param_flow",
    "polyroots",
    "power_sum",
    "principal_minor",
    "r",
    "r_over_s",
    "reconstruct",
    "spectral_projector",
    "split_index",
    "torus_apply",
    "trace_form",
    "unchart",
]
