"""Independent brute-force checks for the closed-form scattering engine.

None of these routines use the lattice Green's functions.  They are slow by
design and belong in tests and the ``verify`` command, never in sweeps.

* :func:`wave_matching` solves the lattice Schrodinger equation for the chain
  directly, with plane-wave boundary conditions on either side of the
  impurities.
* :func:`spinless_transfer` propagates 2x2 transfer matrices across two scalar
  delta impurities.
* :func:`quadrature_green` integrates the edge-band spectral representation
  numerically with a finite broadening and extrapolates it to zero.

The lattice equations use the same sign convention as
:mod:`spinscatter.lattice_models`: the chain propagator
``exp(i k0 |n|) / (2 i t sin k0)`` is the resolvent ``(H0 - E)^-1`` at
``E = 2 t cos k0``, so the wave equation solved here is
``t [psi(n-1) + psi(n+1)] - V(n) psi(n) = E psi(n)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spin_algebra as sa
from .errors import BandEdgeError, OracleFailure, ResonanceSingularityError
from .lattice_models import SIN_K0_MIN, ChainParams, ZpnrParams, edge_gamma2, zpnr_dispersion
from .scattering import ScatterProblem, impurity_potentials

COND_MAX = 1e12
RICHARDSON_LEVELS = 4


@dataclass(frozen=True)
class QuadratureSpec:
    eta: float = 1e-3
    n_points: int = 2_000_000
    tolerance: float = 1e-3

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if self.n_points < 10:
            raise ValueError("n_points too small")


@dataclass
class MatchingResult:
    R: float
    T: float
    S_R: np.ndarray
    S_T: np.ndarray


def _require_interior(k0):
    if not np.sin(k0) > SIN_K0_MIN:
        raise BandEdgeError(f"k0 must lie strictly inside (0, pi); got {k0!r}")


def wave_matching(problem: ScatterProblem) -> MatchingResult:
    """Chain scattering by direct solution of the finite matching system.

    Unknowns: the reflected spinor ``r`` (psi(n) = e^{ikn} chi + e^{-ikn} r for
    n <= -1), the interior spinors psi(0..m), and the transmitted spinor
    ``tau`` (psi(n) = e^{ikn} tau for n >= m+1).  The wave equation at sites
    -1..m+1 gives a square system of size 8 (m + 3).
    """
    params = problem.params
    if not isinstance(params, ChainParams):
        raise TypeError("wave_matching is defined for the chain model only")
    k = float(problem.k0)
    _require_interior(k)
    m = int(problem.m)
    t = params.t
    energy = 2.0 * t * np.cos(k)
    chi = problem.chi_in
    d = sa.DIM
    eye = np.eye(d)

    v00, vmm = impurity_potentials(params, m)
    onsite = {0: v00} if vmm is None else {0: v00, m: vmm}

    n_unknown = (m + 3) * d
    r_cols = slice(0, d)
    tau_cols = slice(n_unknown - d, n_unknown)

    def psi(n):
        """psi(n) = C @ x + c in terms of the unknown vector x."""
        C = np.zeros((d, n_unknown), dtype=complex)
        c = np.zeros(d, dtype=complex)
        if n <= -1:
            c += np.exp(1j * k * n) * chi
            C[:, r_cols] = np.exp(-1j * k * n) * eye
        elif n >= m + 1:
            C[:, tau_cols] = np.exp(1j * k * n) * eye
        else:
            C[:, d * (n + 1) : d * (n + 2)] = eye
        return C, c

    A = np.zeros((n_unknown, n_unknown), dtype=complex)
    b = np.zeros(n_unknown, dtype=complex)
    for row, n in enumerate(range(-1, m + 2)):
        C0, c0 = psi(n)
        Cl, cl = psi(n - 1)
        Cr, cr = psi(n + 1)
        V = onsite.get(n, np.zeros((d, d)))
        lhs = t * (Cl + Cr) - V @ C0 - energy * C0
        const = t * (cl + cr) - V @ c0 - energy * c0
        A[row * d : (row + 1) * d] = lhs
        b[row * d : (row + 1) * d] = -const

    cond = np.linalg.cond(A)
    if not cond <= COND_MAX:
        raise ResonanceSingularityError(k, cond)
    x = np.linalg.solve(A, b)
    r = x[r_cols]
    tau = x[tau_cols]
    return MatchingResult(R=float(np.vdot(r, r).real), T=float(np.vdot(tau, tau).real), S_R=r, S_T=tau)


def spinless_transfer(u_eff: float, m, k0: float, t: float = 1.0) -> float:
    """Transmission of a spinless electron through scalar impurities u_eff at sites 0 and m.

    ``m=None`` places a single impurity at site 0.  Same wave-equation sign
    convention as :func:`wave_matching`.
    """
    _require_interior(k0)
    energy = 2.0 * t * np.cos(k0)
    sites = [0] if m is None or m == 0 else [0, int(m)]
    scale = 2.0 if (m == 0 and m is not None) else 1.0
    last = max(sites)

    # psi(n+1) = ((E + u_n)/t) psi(n) - psi(n-1), state vector (psi(n), psi(n-1)).
    M = np.eye(2, dtype=complex)
    for n in range(-1, last + 2):
        u = scale * u_eff if n in sites else 0.0
        step = np.array([[(energy + u) / t, -1.0], [1.0, 0.0]], dtype=complex)
        M = step @ M

    # Left: (psi(-1), psi(-2)) from amplitudes (incident=1, reflected=r).
    left = np.array(
        [[np.exp(-1j * k0), np.exp(1j * k0)], [np.exp(-2j * k0), np.exp(2j * k0)]]
    )
    n_hi = last + 2
    right = np.array(
        [
            [np.exp(1j * k0 * n_hi), np.exp(-1j * k0 * n_hi)],
            [np.exp(1j * k0 * (n_hi - 1)), np.exp(-1j * k0 * (n_hi - 1))],
        ]
    )
    Q = np.linalg.solve(right, M @ left)
    r = -Q[1, 0] / Q[1, 1]
    tau = Q[0, 0] + Q[0, 1] * r
    return float(abs(tau) ** 2)


def broadened_green(m: int, k0: float, params: ZpnrParams, eta: float, n_points: int) -> complex:
    """Edge-band propagator G(m,0; 0,0) from the spectral integral at finite eta.

    Midpoint rule on the periodic integrand over [-pi, pi); the sum is
    numpy's pairwise reduction, so the value is run-to-run identical.
    """
    _require_interior(k0)
    energy = zpnr_dispersion(k0, params)
    h = 2.0 * np.pi / n_points
    k = -np.pi + (np.arange(n_points) + 0.5) * h
    denom = (zpnr_dispersion(k, params) - energy) + 1j * eta
    integrand = edge_gamma2(k, params) * np.exp(1j * k * m) / denom
    return complex(np.sum(integrand) / n_points)


def quadrature_green(m: int, k0: float, params: ZpnrParams = ZpnrParams(), spec: QuadratureSpec = QuadratureSpec()) -> complex:
    """Zero-broadening limit of :func:`broadened_green`.

    The broadened value has a regular expansion in eta; it is evaluated at
    eta, eta/2, eta/4 and eta/8 and Richardson-extrapolated to eta -> 0.  The
    change between the last two diagonal entries of the table is the error
    estimate, and exceeding ``spec.tolerance`` raises :class:`OracleFailure`.
    """
    levels = RICHARDSON_LEVELS
    table = [[broadened_green(m, k0, params, spec.eta / 2**j, spec.n_points)] for j in range(levels)]
    for j in range(1, levels):
        for i in range(1, j + 1):
            f = 2.0**i
            table[j].append((f * table[j][i - 1] - table[j - 1][i - 1]) / (f - 1.0))
    best = table[-1][-1]
    estimate = abs(best - table[-2][-1])
    if estimate > spec.tolerance:
        raise OracleFailure(
            f"quadrature for m={m}, k0={k0} did not converge: estimate {estimate:.2e} > {spec.tolerance:.2e}"
        )
    return best
