r"""Dispersions and single-band Green's functions for the two host lattices.

Two models are supported:

* ``chain`` -- an infinite one-dimensional tight-binding chain with hopping
  ``t``.
* ``zpnr`` -- the A-type edge band of a zigzag phosphorene nanoribbon,
  treated as a single quasi-flat band of width ``4 t'`` with
  ``t' = 2 t1 t4 / t2`` and edge-state weight :math:`\gamma^2(k)` on the
  outermost zigzag row.

Sign convention
---------------
Every propagator returned here is a matrix element of
:math:`(H_0 - E + i0^+)^{-1}` at the energy given by the matching
``*_dispersion`` function.  With this convention the incident plane wave
:math:`e^{i k_0 n}` is accompanied by outgoing waves :math:`e^{i k_0 |n|}`,
and all closed forms carry the common factor :math:`1/(2 i t \sin k_0)`.

All functions broadcast over ``k0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import BandEdgeError

#: Band-edge exclusion: propagators have explicit 1/sin(k0) poles.
SIN_K0_MIN = 1e-9

# Ab initio hoppings for phosphorene (eV); t3 and t5 are neglected.
T1_DEFAULT = -1.220
T2_DEFAULT = 3.665
T4_DEFAULT = -0.105


@dataclass(frozen=True)
class ChainParams:
    """Infinite chain with hopping ``t`` and impurity exchange ``U``."""

    t: float = 1.0
    U: float = 0.0

    def __post_init__(self):
        if self.t == 0:
            raise ValueError("hopping t must be nonzero")

    model = "chain"

    @classmethod
    def from_u_prime(cls, u_prime: float, t: float = 1.0) -> "ChainParams":
        return cls(t=t, U=u_prime * t)

    @property
    def energy_scale(self) -> float:
        return self.t

    @property
    def u_prime(self) -> float:
        return self.U / self.t


@dataclass(frozen=True)
class ZpnrParams:
    """Edge band of a zigzag phosphorene nanoribbon (energies in eV).

    ``diag_shift`` selects the real, k-independent part of the on-site
    propagator: ``"residue"`` (default) is ``-(t1/t2)**2 / t'``, the value
    produced by the residue evaluation of the three contour integrals and
    confirmed by direct quadrature; ``"quarter"`` is ``-(t1/t2)**2 / (4 t')``.
    """

    t1: float = T1_DEFAULT
    t2: float = T2_DEFAULT
    t4: float = T4_DEFAULT
    U: float = 0.0
    diag_shift: Literal["residue", "quarter"] = "residue"

    model = "zpnr"

    def __post_init__(self):
        if self.t2 == 0 or self.t1 == 0 or self.t4 == 0:
            raise ValueError("t1, t2 and t4 must be nonzero")
        if abs(2 * self.t1 / self.t2) >= 1:
            raise ValueError("edge state requires |2 t1 / t2| < 1")
        if self.diag_shift not in ("residue", "quarter"):
            raise ValueError(f"unknown diag_shift {self.diag_shift!r}")

    @classmethod
    def from_u_prime(cls, u_prime: float, **hoppings) -> "ZpnrParams":
        probe = cls(**hoppings)
        return cls(**hoppings, U=u_prime * probe.t_prime)

    @property
    def ratio(self) -> float:
        return self.t1 / self.t2

    @property
    def t_prime(self) -> float:
        return 2.0 * self.t1 * self.t4 / self.t2

    @property
    def e0(self) -> float:
        return -2.0 * self.t_prime

    @property
    def energy_scale(self) -> float:
        return self.t_prime

    @property
    def u_prime(self) -> float:
        return self.U / self.t_prime


ModelParams = Union[ChainParams, ZpnrParams]


def _check_band_interior(k0):
    k0 = np.asarray(k0, dtype=float)
    s = np.sin(k0)
    if np.any(~(s > SIN_K0_MIN)):
        raise BandEdgeError(f"k0 must lie strictly inside (0, pi); got {k0!r}")
    return k0, s


def chain_dispersion(k0, t: float = 1.0):
    """E = 2 t cos k0."""
    return 2.0 * t * np.cos(k0)


def zpnr_dispersion(k0, params: ZpnrParams = ZpnrParams()):
    """E = E0 + 2 t' cos k0 for the edge band."""
    return params.e0 + 2.0 * params.t_prime * np.cos(k0)


def edge_alpha(k, params: ZpnrParams = ZpnrParams()):
    """Transverse decay factor of the edge state, -2 (t1/t2) cos(k/2)."""
    return -2.0 * params.ratio * np.cos(np.asarray(k) / 2.0)


def edge_gamma2(k, params: ZpnrParams = ZpnrParams()):
    """Edge-row weight gamma^2(k) = 1 - alpha^2(k)."""
    return 1.0 - edge_alpha(k, params) ** 2


def chain_green(m, mp, k0, t: float = 1.0):
    """Chain propagator G(m; m') = exp(i k0 |m - m'|) / (2 i t sin k0)."""
    k0, s = _check_band_interior(k0)
    dist = np.abs(np.asarray(m) - np.asarray(mp))
    return np.exp(1j * k0 * dist) / (2j * t * s)


def zpnr_green_diag(k0, params: ZpnrParams = ZpnrParams()):
    """On-site edge propagator G(0,0; 0,0).

    ``gamma^2(k0) / (2 i t' sin k0)`` plus a real constant fixed by
    ``params.diag_shift``.
    """
    k0, s = _check_band_interior(k0)
    tp = params.t_prime
    r2 = params.ratio**2
    shift = -r2 / tp if params.diag_shift == "residue" else -r2 / (4.0 * tp)
    return edge_gamma2(k0, params) / (2j * tp * s) + shift


def zpnr_green_offdiag(m, k0, params: ZpnrParams = ZpnrParams()):
    """Edge propagator between sites separated by ``|m| >= 1`` along the zigzag row."""
    m = np.abs(np.asarray(m))
    if np.any(m < 1):
        raise ValueError("separation 0 has its own closed form; use zpnr_green_diag")
    k0, s = _check_band_interior(k0)
    tp = params.t_prime
    return edge_gamma2(k0, params) * np.exp(1j * k0 * m) / (2j * tp * s)


class GreensKernel:
    """Propagator values for one model at fixed incident wave number(s).

    ``k0`` may be a scalar or an array; every method broadcasts over it.
    """

    def __init__(self, params: ModelParams, k0):
        self.params = params
        self.k0, self._sin = _check_band_interior(k0)

    @property
    def model(self) -> str:
        return self.params.model

    @property
    def energy(self):
        if isinstance(self.params, ChainParams):
            return chain_dispersion(self.k0, self.params.t)
        return zpnr_dispersion(self.k0, self.params)

    def green(self, distance: int):
        """G between two impurity-row sites ``distance`` apart."""
        d = abs(int(distance))
        if isinstance(self.params, ChainParams):
            return chain_green(d, 0, self.k0, self.params.t)
        if d == 0:
            return zpnr_green_diag(self.k0, self.params)
        return zpnr_green_offdiag(d, self.k0, self.params)

    def outgoing(self):
        """Amplitude factor multiplying exp(i k0 |distance|) far from the impurities."""
        if isinstance(self.params, ChainParams):
            return 1.0 / (2j * self.params.t * self._sin)
        tp = self.params.t_prime
        return edge_gamma2(self.k0, self.params) / (2j * tp * self._sin)
