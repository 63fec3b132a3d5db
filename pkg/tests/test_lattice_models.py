import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinscatter.errors import BandEdgeError
from spinscatter.lattice_models import (
    ChainParams,
    GreensKernel,
    ZpnrParams,
    chain_dispersion,
    chain_green,
    edge_alpha,
    edge_gamma2,
    zpnr_dispersion,
    zpnr_green_diag,
    zpnr_green_offdiag,
)
from spinscatter.oracles import QuadratureSpec, quadrature_green

P = ZpnrParams()
K_VALUES = [0.5, 1.0, np.pi / 2, 2.0, 2.5]

# Hand arithmetic with t1=-1.220, t2=3.665, t4=-0.105 eV:
# t' = 2 * 1.220 * 0.105 / 3.665 = 0.2562 / 3.665
T_PRIME = 0.2562 / 3.665
E0 = -2 * T_PRIME


class TestParams:
    def test_derived_zpnr_quantities(self):
        assert P.t_prime == pytest.approx(0.0699045, abs=1e-7)
        assert P.e0 == pytest.approx(-4 * P.t1 * P.t4 / P.t2, rel=1e-15)
        assert P.t_prime == pytest.approx(T_PRIME, rel=1e-14)

    def test_u_prime_normalization(self):
        assert ChainParams.from_u_prime(10).U == 10
        z = ZpnrParams.from_u_prime(10)
        assert z.U == pytest.approx(10 * T_PRIME)
        assert z.u_prime == pytest.approx(10)

    def test_rejects_zero_hopping(self):
        with pytest.raises(ValueError):
            ChainParams(t=0)

    def test_rejects_missing_edge_state(self):
        with pytest.raises(ValueError):
            ZpnrParams(t1=-2.0, t2=3.0)


class TestDispersion:
    def test_chain_band_center_and_edge(self):
        assert chain_dispersion(np.pi / 2) == pytest.approx(0, abs=1e-15)
        assert chain_dispersion(1e-8) == pytest.approx(2)

    @given(st.floats(1e-3, np.pi - 1e-3))
    def test_chain_inverse(self, k):
        assert np.arccos(chain_dispersion(k, 1.0) / 2.0) == pytest.approx(k, abs=1e-7)

    def test_zpnr_band_center(self):
        assert zpnr_dispersion(np.pi / 2) == pytest.approx(E0, abs=1e-15)
        assert zpnr_dispersion(np.pi / 2) == pytest.approx(-0.139809, abs=1e-6)

    def test_zpnr_band_edge(self):
        assert zpnr_dispersion(1e-8) == pytest.approx(E0 + 2 * T_PRIME, abs=1e-12)


class TestEdgeFactors:
    @given(st.floats(-np.pi, np.pi))
    def test_normalization(self, k):
        assert edge_gamma2(k) + edge_alpha(k) ** 2 == pytest.approx(1.0, abs=1e-15)

    def test_gamma2_positive_on_zone(self):
        k = np.linspace(-np.pi, np.pi, 1001)
        g = edge_gamma2(k)
        assert np.all(g > 0) and np.all(g <= 1)

    def test_alpha_vanishes_at_zone_boundary(self):
        assert edge_alpha(np.pi) == pytest.approx(0, abs=1e-16)
        assert edge_gamma2(np.pi) == pytest.approx(1)


class TestChainGreen:
    def test_onsite_band_center(self):
        assert chain_green(0, 0, np.pi / 2) == pytest.approx(-0.5j, abs=1e-15)

    def test_distance_two_band_center(self):
        assert chain_green(3, 1, np.pi / 2) == pytest.approx(0.5j, abs=1e-15)

    @given(st.integers(-20, 20), st.integers(-20, 20), st.floats(0.01, np.pi - 0.01))
    def test_symmetric(self, m, mp, k):
        assert chain_green(m, mp, k) == chain_green(mp, m, k)

    @pytest.mark.parametrize("k", np.linspace(0.05, np.pi - 0.05, 9))
    def test_resolvent_identity(self, k):
        # The closed form is (H0 - E)^-1: t[G(m-1) + G(m+1)] - E G(m) = delta_m.
        t = 1.3
        e = chain_dispersion(k, t)
        for mp in (-2, 0, 3):
            for m in range(-6, 7):
                lhs = t * (chain_green(m - 1, mp, k, t) + chain_green(m + 1, mp, k, t)) - e * chain_green(m, mp, k, t)
                assert abs(lhs - (1.0 if m == mp else 0.0)) < 1e-10

    @pytest.mark.parametrize("k", [0.0, np.pi, 1e-12])
    def test_band_edge_rejected(self, k):
        with pytest.raises(BandEdgeError):
            chain_green(0, 0, k)


class TestZpnrGreen:
    def test_diag_real_part_constant(self):
        shift = -(P.t1 / P.t2) ** 2 / T_PRIME
        for k in K_VALUES:
            assert zpnr_green_diag(k).real == pytest.approx(shift, rel=1e-12)

    def test_quarter_variant_real_part(self):
        p = ZpnrParams(diag_shift="quarter")
        shift = -(P.t1 / P.t2) ** 2 / (4 * T_PRIME)
        assert zpnr_green_diag(1.0, p).real == pytest.approx(shift, rel=1e-12)

    @pytest.mark.parametrize("k", K_VALUES + [np.pi - 1e-3, 1e-3])
    def test_diag_imag_part_negative(self, k):
        g = zpnr_green_diag(k)
        assert g.imag < 0
        assert g.imag == pytest.approx(-edge_gamma2(k) / (2 * T_PRIME * np.sin(k)), rel=1e-12)

    def test_offdiag_band_center(self):
        gamma2 = 1 - 2 * (P.t1 / P.t2) ** 2
        assert zpnr_green_offdiag(1, np.pi / 2) == pytest.approx(gamma2 / (2 * T_PRIME), rel=1e-12)

    @given(st.integers(1, 50), st.floats(0.01, np.pi - 0.01))
    def test_offdiag_modulus_independent_of_m(self, m, k):
        assert abs(zpnr_green_offdiag(m, k)) == pytest.approx(abs(zpnr_green_offdiag(1, k)), rel=1e-12)

    def test_offdiag_rejects_zero_separation(self):
        with pytest.raises(ValueError):
            zpnr_green_offdiag(0, 1.0)

    def test_band_edge_rejected(self):
        with pytest.raises(BandEdgeError):
            zpnr_green_diag(np.pi)


class TestKernel:
    def test_chain_kernel_dispatch(self):
        kern = GreensKernel(ChainParams(), 1.0)
        assert kern.green(0) == chain_green(0, 0, 1.0)
        assert kern.green(-3) == chain_green(3, 0, 1.0)
        assert kern.outgoing() == pytest.approx(chain_green(0, 0, 1.0))
        assert kern.energy == pytest.approx(2 * np.cos(1.0))

    def test_zpnr_kernel_dispatch(self):
        kern = GreensKernel(P, np.array([0.7, 1.9]))
        np.testing.assert_allclose(kern.green(0), zpnr_green_diag(np.array([0.7, 1.9])))
        np.testing.assert_allclose(kern.green(2), zpnr_green_offdiag(2, np.array([0.7, 1.9])))
        np.testing.assert_allclose(kern.outgoing() * np.exp(1j * kern.k0 * 4), kern.green(4))


@pytest.mark.slow
class TestAgainstQuadrature:
    """Closed forms against direct numerical integration of the spectral representation."""

    @pytest.mark.parametrize("k", K_VALUES)
    @pytest.mark.parametrize("m", [0, 1, 2, 5])
    def test_closed_form(self, m, k):
        closed = zpnr_green_diag(k) if m == 0 else zpnr_green_offdiag(m, k)
        assert abs(closed - quadrature_green(m, k)) < 1e-3

    def test_quarter_shift_disagrees(self):
        # The quarter on-site constant misses the quadrature by |3/4 (t1/t2)^2 / t'| ~ 1.19.
        quarter = zpnr_green_diag(1.0, ZpnrParams(diag_shift="quarter"))
        gap = abs(quarter - quadrature_green(0, 1.0))
        assert gap == pytest.approx(0.75 * (P.t1 / P.t2) ** 2 / T_PRIME, rel=1e-3)

    def test_quadrature_modulus_independent_of_m(self):
        spec = QuadratureSpec()
        mods = [abs(quadrature_green(m, 1.3, P, spec)) for m in (1, 2, 5)]
        assert max(mods) - min(mods) < 1e-3
