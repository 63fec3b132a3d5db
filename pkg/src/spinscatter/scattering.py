"""Two-impurity Heisenberg scattering via the transition-operator formalism.

The impurities sit on sites 0 and m.  Restricted to those two sites the
potential is block diagonal, ``V = diag(V00, Vmm)``, and the auxiliary state
``V (1 - chi)^-1 |psi_in>`` is obtained from one 16-dimensional linear solve
per incident wave number.  For ``m = 0`` both impurities share a site and the
problem collapses to an 8-dimensional solve with potential ``V00 + Vmm``.

Everything here is vectorized over ``k0``; the scalar entry points wrap the
batched core and raise where the batched code would emit ``nan``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import spin_algebra as sa
from .errors import ResonanceSingularityError
from .lattice_models import SIN_K0_MIN, GreensKernel, ModelParams

#: Largest condition number of (1 - chi) accepted before declaring a singularity.
COND_MAX = 1e12


@dataclass(frozen=True)
class ScatterProblem:
    params: ModelParams
    m: int
    k0: float
    initial_spin: Union[str, np.ndarray] = "udd"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"impurity separation must be a non-negative integer, got {self.m!r}")

    @property
    def chi_in(self) -> np.ndarray:
        return initial_vector(self.initial_spin)


@dataclass
class ScatterOutcome:
    k0: float
    E: float
    R: float
    T: float
    S_R: np.ndarray
    S_T: np.ndarray
    s0: np.ndarray
    sm: np.ndarray


@dataclass
class ScatterGrid:
    """Batched outcome over a k0 grid; invalid points hold ``nan``."""

    k0: np.ndarray
    E: np.ndarray
    R: np.ndarray
    T: np.ndarray
    S_R: np.ndarray
    S_T: np.ndarray
    valid: np.ndarray = field(repr=False)


def initial_vector(spin) -> np.ndarray:
    if isinstance(spin, str):
        return sa.basis_state(spin)
    v = np.asarray(spin, dtype=complex)
    if v.shape != (sa.DIM,):
        raise ValueError(f"initial spin state must have 8 amplitudes, got shape {v.shape}")
    return v


def impurity_potentials(params: ModelParams, m: int):
    """(V00, Vmm) as 8x8 operators; for m = 0 returns (V00 + Vmm, None)."""
    pair = sa.heisenberg_pair()
    v00 = params.U * sa.embed_pair(pair, (1, 2))
    vmm = params.U * sa.embed_pair(pair, (1, 3))
    if m == 0:
        return v00 + vmm, None
    return v00, vmm


def build_potentials(problem: ScatterProblem):
    return impurity_potentials(problem.params, problem.m)


def build_chi(problem: ScatterProblem, V00: np.ndarray, Vmm: np.ndarray) -> np.ndarray:
    """16x16 matrix [[G00 V00, G0m Vmm], [Gm0 V00, Gmm Vmm]]."""
    if problem.m < 1 or Vmm is None:
        raise ValueError("two-block chi needs distinct sites (m >= 1); m = 0 uses the single-site solve")
    kernel = GreensKernel(problem.params, problem.k0)
    return _chi_stack(kernel, problem.m, V00, Vmm)


def _chi_stack(kernel: GreensKernel, m: int, V00, Vmm) -> np.ndarray:
    g_on = np.asarray(kernel.green(0))[..., None, None]
    g_off = np.asarray(kernel.green(m))[..., None, None]
    top = np.concatenate([g_on * V00, g_off * Vmm], axis=-1)
    bottom = np.concatenate([g_off * V00, g_on * Vmm], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _auxiliary(kernel: GreensKernel, m: int, V00, Vmm, chi_in):
    """Batched (s0, sm, condition numbers) on the kernel's k0 values."""
    k0 = np.atleast_1d(kernel.k0)
    n = k0.size
    if Vmm is None:
        g_on = np.atleast_1d(kernel.green(0))
        a = np.eye(sa.DIM) - g_on[:, None, None] * V00
        rhs = np.broadcast_to(chi_in, (n, sa.DIM))
        cond = np.linalg.cond(a)
        x = np.linalg.solve(a, rhs[..., None])[..., 0]
        s0 = x @ V00.T
        return s0, np.zeros_like(s0), cond

    chi = _chi_stack(kernel, m, V00, Vmm).reshape(n, 2 * sa.DIM, 2 * sa.DIM)
    a = np.eye(2 * sa.DIM) - chi
    phase = np.exp(1j * k0 * m)
    rhs = np.concatenate([np.broadcast_to(chi_in, (n, sa.DIM)), phase[:, None] * chi_in], axis=-1)
    cond = np.linalg.cond(a)
    x = np.linalg.solve(a, rhs[..., None])[..., 0]
    s0 = x[:, : sa.DIM] @ V00.T
    sm = x[:, sa.DIM :] @ Vmm.T
    return s0, sm, cond


def solve_auxiliary(problem: ScatterProblem):
    """Spin amplitudes (s0, sm) of the auxiliary state on the two impurity sites."""
    V00, Vmm = build_potentials(problem)
    kernel = GreensKernel(problem.params, problem.k0)
    s0, sm, cond = _auxiliary(kernel, problem.m, V00, Vmm, problem.chi_in)
    if not cond[0] <= COND_MAX:
        raise ResonanceSingularityError(problem.k0, cond[0])
    return s0[0], sm[0]


def _outgoing_states(kernel: GreensKernel, m: int, s0, sm, chi_in):
    k0 = np.atleast_1d(kernel.k0)
    pre = np.atleast_1d(kernel.outgoing())[:, None]
    S_R = pre * (s0 + np.exp(1j * k0 * m)[:, None] * sm)
    S_T = chi_in + pre * (s0 + np.exp(-1j * k0 * m)[:, None] * sm)
    return S_R, S_T


def scatter(problem: ScatterProblem) -> ScatterOutcome:
    """Reflected/transmitted spin states and probabilities at one wave number."""
    kernel = GreensKernel(problem.params, problem.k0)
    s0, sm = solve_auxiliary(problem)
    S_R, S_T = _outgoing_states(kernel, problem.m, s0[None], sm[None], problem.chi_in)
    S_R, S_T = S_R[0], S_T[0]
    return ScatterOutcome(
        k0=float(problem.k0),
        E=float(kernel.energy),
        R=float(np.vdot(S_R, S_R).real),
        T=float(np.vdot(S_T, S_T).real),
        S_R=S_R,
        S_T=S_T,
        s0=s0,
        sm=sm,
    )


def scatter_with_potentials(params: ModelParams, m: int, V00, Vmm, chi_in, k0) -> ScatterGrid:
    """Batched scattering for caller-supplied on-site spin potentials.

    ``Vmm=None`` selects the single-site (m = 0) path with potential ``V00``.
    Band-edge and singular points come back as ``nan`` with ``valid=False``.
    """
    k0 = np.atleast_1d(np.asarray(k0, dtype=float))
    n = k0.size
    chi_in = np.asarray(chi_in, dtype=complex)
    R = np.full(n, np.nan)
    T = np.full(n, np.nan)
    E = np.full(n, np.nan)
    S_R = np.full((n, sa.DIM), np.nan, dtype=complex)
    S_T = np.full((n, sa.DIM), np.nan, dtype=complex)
    valid = np.sin(k0) > SIN_K0_MIN
    if np.any(valid):
        kernel = GreensKernel(params, k0[valid])
        s0, sm, cond = _auxiliary(kernel, m, V00, Vmm, chi_in)
        sr, st = _outgoing_states(kernel, m, s0, sm, chi_in)
        ok = cond <= COND_MAX
        idx = np.flatnonzero(valid)
        E[idx] = kernel.energy
        S_R[idx[ok]] = sr[ok]
        S_T[idx[ok]] = st[ok]
        R[idx[ok]] = np.einsum("ij,ij->i", sr[ok].conj(), sr[ok]).real
        T[idx[ok]] = np.einsum("ij,ij->i", st[ok].conj(), st[ok]).real
        valid[idx[~ok]] = False
    return ScatterGrid(k0=k0, E=E, R=R, T=T, S_R=S_R, S_T=S_T, valid=valid)


def scatter_many(params: ModelParams, m: int, initial_spin, k0) -> ScatterGrid:
    """Batched :func:`scatter` over an array of wave numbers."""
    V00, Vmm = impurity_potentials(params, m)
    return scatter_with_potentials(params, m, V00, Vmm, initial_vector(initial_spin), k0)
