"""Oracle-backed verification suites behind the ``verify`` command."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import oracles
from . import spin_algebra as sa
from .lattice_models import ChainParams, ZpnrParams, chain_dispersion, chain_green, zpnr_green_diag, zpnr_green_offdiag
from .scattering import ScatterProblem, scatter, scatter_many

SCOPES = ("all", "chain", "zpnr", "greens")

K_EDGE = 0.01
UNITARITY_TOL = 1e-10
ORACLE_TOL = 1e-10
QUAD_TOL = 1e-3


@dataclass
class CheckResult:
    name: str
    max_dev: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_dev < self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} max dev {self.max_dev:.3e}  (tol {self.tolerance:.0e})"


def interior_grid(n: int) -> np.ndarray:
    return np.linspace(K_EDGE, np.pi - K_EDGE, n)


def _params(model, u_prime):
    if model == "chain":
        return ChainParams.from_u_prime(u_prime)
    return ZpnrParams.from_u_prime(u_prime)


def check_unitarity(model: str, n_k: int = 512) -> CheckResult:
    k0 = interior_grid(n_k)
    worst = 0.0
    for u, m, b in itertools.product((1.0, 10.0, 100.0), (0, 1, 2, 5), range(sa.DIM)):
        g = scatter_many(_params(model, u), m, sa.basis_label(b), k0)
        dev = np.abs(g.R + g.T - 1.0)[g.valid]
        worst = max(worst, float(dev.max(initial=0.0)))
    return CheckResult(f"{model} unitarity R+T=1", worst, UNITARITY_TOL)


def check_sz_conservation(model: str, n_k: int = 128) -> CheckResult:
    k0 = interior_grid(n_k)
    sz = np.real(np.diag(sa.sz_total()))
    worst = 0.0
    for u, m, b in itertools.product((1.0, 10.0), (0, 2, 5), range(sa.DIM)):
        g = scatter_many(_params(model, u), m, sa.basis_label(b), k0)
        outside = np.abs(sz - sz[b]) > 0.25
        for S in (g.S_R, g.S_T):
            worst = max(worst, float(np.abs(S[:, outside]).max(initial=0.0)))
    return CheckResult(f"{model} S_z conservation", worst, 1e-12)


def check_wave_matching(n_k: int = 32) -> CheckResult:
    k0 = interior_grid(n_k)
    worst = 0.0
    for m, u, init in itertools.product((1, 2, 5), (1.0, 10.0), ("udd", "uuu", "udu")):
        params = ChainParams.from_u_prime(u)
        for k in k0:
            out = scatter(ScatterProblem(params, m, k, init))
            ref = oracles.wave_matching(ScatterProblem(params, m, k, init))
            worst = max(
                worst,
                abs(out.R - ref.R),
                abs(out.T - ref.T),
                float(np.abs(out.S_R - ref.S_R).max()),
                float(np.abs(out.S_T - ref.S_T).max()),
            )
    return CheckResult("chain engine vs wave matching", worst, ORACLE_TOL)


def check_spinless_reduction(n_k: int = 128) -> CheckResult:
    k0 = interior_grid(n_k)
    worst = 0.0
    for m, u, init in itertools.product((1, 2, 5), (1.0, 10.0, 100.0), ("uuu", "ddd")):
        params = ChainParams.from_u_prime(u)
        g = scatter_many(params, m, init, k0)
        ref = np.array([oracles.spinless_transfer(params.U / 4.0, m, k, params.t) for k in k0])
        worst = max(worst, float(np.abs(g.T - ref).max()))
    return CheckResult("chain triplet vs spinless transfer", worst, ORACLE_TOL)


def check_chain_lattice_identity() -> CheckResult:
    """(H0 - E) G = 1 on the chain: t[G(n-1) + G(n+1)] - E G(n) = delta(n)."""
    worst = 0.0
    for k in interior_grid(16):
        e = chain_dispersion(k)
        for n in range(-4, 5):
            lhs = chain_green(n - 1, 0, k) + chain_green(n + 1, 0, k) - e * chain_green(n, 0, k)
            worst = max(worst, abs(lhs - (1.0 if n == 0 else 0.0)))
    return CheckResult("chain resolvent identity", worst, 1e-10)


def check_quadrature(spec: oracles.QuadratureSpec = oracles.QuadratureSpec()) -> CheckResult:
    params = ZpnrParams()
    worst = 0.0
    for k, m in itertools.product((0.5, 1.0, np.pi / 2, 2.0, 2.5), (0, 1, 2, 5)):
        closed = zpnr_green_diag(k, params) if m == 0 else zpnr_green_offdiag(m, k, params)
        worst = max(worst, abs(closed - oracles.quadrature_green(m, k, params, spec)))
    return CheckResult("zpnr closed form vs quadrature", worst, spec.tolerance)


SUITES = {
    "chain": [
        check_wave_matching,
        check_spinless_reduction,
        lambda: check_unitarity("chain"),
        lambda: check_sz_conservation("chain"),
    ],
    "zpnr": [lambda: check_unitarity("zpnr"), lambda: check_sz_conservation("zpnr")],
    "greens": [check_chain_lattice_identity, check_quadrature],
}


def run_checks(scope: str = "all") -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    names = ("chain", "zpnr", "greens") if scope == "all" else (scope,)
    return [check() for name in names for check in SUITES[name]]
