"""Impurity density matrices and negativity of the scattered spin states."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import UndefinedStateError
from .spin_algebra import hermitian_eigenvalues, partial_transpose, reduced_impurity_states

CombineMode = Literal["weighted", "paper_sum"]
COMBINE_MODES = ("weighted", "paper_sum")

#: Squared norm below which a scattered channel is treated as empty.
NORM_FLOOR = 1e-14


@dataclass
class EntanglementReport:
    rho_R: np.ndarray
    rho_T: np.ndarray
    rho_total: np.ndarray
    neg_R: float
    neg_T: float
    neg_total: float
    combine_mode: str


def negativity(rho) -> np.ndarray | float:
    """Sum of |negative eigenvalues| of the partial transpose on impurity R.

    Works on a single 4x4 matrix or a stack; a Bell state gives 1/2.
    """
    lam = hermitian_eigenvalues(partial_transpose(rho, "R"))
    neg = -np.sum(np.minimum(lam, 0.0), axis=-1) + 0.0
    return float(neg) if np.ndim(neg) == 0 else neg


def _normalized(v):
    norm2 = np.einsum("...i,...i->...", v.conj(), v).real
    rho = reduced_impurity_states(v)
    safe = np.where(norm2 > NORM_FLOOR, norm2, 1.0)
    rho = np.where((norm2 > NORM_FLOOR)[..., None, None], rho / safe[..., None, None], 0.0)
    return rho, norm2


def _combine(rho_R, rho_T, R, T, mode):
    if mode == "weighted":
        return R[..., None, None] * rho_R + T[..., None, None] * rho_T
    if mode == "paper_sum":
        return rho_R + rho_T
    raise ValueError(f"combine mode must be one of {COMBINE_MODES}, got {mode!r}")


def density_matrices(S_R, S_T, mode: CombineMode = "weighted") -> EntanglementReport:
    """Normalized reflected/transmitted impurity states and their combination.

    ``weighted`` mixes the two channels with probabilities R and T (trace 1);
    ``paper_sum`` adds the two normalized matrices (trace 2).  A channel with
    vanishing norm contributes a zero matrix and zero negativity.
    """
    S_R = np.asarray(S_R, dtype=complex)
    S_T = np.asarray(S_T, dtype=complex)
    rho_R, R = _normalized(S_R)
    rho_T, T = _normalized(S_T)
    if R <= NORM_FLOOR and T <= NORM_FLOOR:
        raise UndefinedStateError("both reflected and transmitted spin states vanish")
    rho_total = _combine(rho_R, rho_T, R, T, mode)
    return EntanglementReport(
        rho_R=rho_R,
        rho_T=rho_T,
        rho_total=rho_total,
        neg_R=negativity(rho_R),
        neg_T=negativity(rho_T),
        neg_total=negativity(rho_total),
        combine_mode=mode,
    )


def negativities(S_R, S_T, mode: CombineMode = "weighted"):
    """Batched (neg_R, neg_T, neg_total) for stacks of spin states of shape (n, 8).

    Rows containing ``nan`` give ``nan``.
    """
    S_R = np.asarray(S_R, dtype=complex)
    S_T = np.asarray(S_T, dtype=complex)
    bad = ~(np.all(np.isfinite(S_R), axis=-1) & np.all(np.isfinite(S_T), axis=-1))
    S_R = np.where(bad[:, None], 0.0, S_R)
    S_T = np.where(bad[:, None], 0.0, S_T)
    rho_R, R = _normalized(S_R)
    rho_T, T = _normalized(S_T)
    rho_total = _combine(rho_R, rho_T, R, T, mode)
    out = []
    for rho in (rho_R, rho_T, rho_total):
        neg = np.atleast_1d(negativity(rho)).astype(float)
        neg[bad] = np.nan
        out.append(neg)
    return tuple(out)
