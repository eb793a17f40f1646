import math

import numpy as np
import pytest

from ofdm_scss import (
    Alphabet,
    case_spec,
    draw_pair,
    expected_power,
    extract_coefficients,
    make_mixture,
)
from ofdm_scss.mixtures import record_rng


class TestAlphabet:
    def test_discrete_distinct(self):
        with pytest.raises(ValueError):
            Alphabet.discrete(1.0, 1.0)

    def test_uniform_bounds(self):
        with pytest.raises(ValueError):
            Alphabet.uniform(2.0, 1.0)

    def test_second_moments(self):
        assert Alphabet.discrete(1, -1).second_moment() == pytest.approx(1.0)
        s5 = math.sqrt(5)
        h = Alphabet.discrete(12 / s5, 4 / s5, -4 / s5, -12 / s5)
        assert h.second_moment() == pytest.approx(16.0)
        u = Alphabet.uniform(-math.sqrt(3), math.sqrt(3))
        assert u.second_moment() == pytest.approx(1.0)


class TestCaseSpec:
    def test_unknown_case(self):
        with pytest.raises(ValueError):
            case_spec(5, 0)

    def test_case2_scale(self):
        spec = case_spec(2, 0)
        assert spec.scale == pytest.approx(1 / math.sqrt(56), rel=1e-12)
        assert spec.soi_indices == tuple(range(1, 29))
        assert spec.intf_indices == tuple(range(1, 29))

    def test_case1_split(self):
        spec = case_spec(1, 42)
        assert spec.scale == pytest.approx(1 / math.sqrt(28), rel=1e-12)
        assert len(spec.soi_indices) == 14 and len(spec.intf_indices) == 14
        assert not set(spec.soi_indices) & set(spec.intf_indices)
        assert set(spec.soi_indices) | set(spec.intf_indices) == set(range(1, 29))
        # fixed once per seed
        assert case_spec(1, 42).soi_indices == spec.soi_indices
        assert case_spec(1, 43).soi_indices != spec.soi_indices

    def test_case4_interference_power(self):
        spec = case_spec(4, 0)
        assert spec.intf_alphabet.second_moment() == pytest.approx(16.0)
        assert expected_power(spec, "interference") == pytest.approx(16.0)

    def test_expected_powers(self):
        for case_id in (1, 2, 3, 4):
            spec = case_spec(case_id, 7)
            assert expected_power(spec, "soi") == pytest.approx(1.0, rel=1e-12)
            assert expected_power(spec, "interference") == pytest.approx(16.0,
                                                                         rel=1e-12)
        with pytest.raises(ValueError):
            expected_power(case_spec(2, 0), "noise")


class TestDrawPair:
    def test_case2_alphabet_membership(self):
        spec = case_spec(2, 3)
        g, h = draw_pair(spec, record_rng(spec, 0))
        a = spec.scale
        nz_g = g.coeffs[g.coeffs != 0]
        nz_h = h.coeffs[h.coeffs != 0]
        assert np.all(np.isin(nz_g.real, [a, -a])) and np.all(nz_g.imag == 0)
        assert np.all(np.isin(nz_h.real, [4 * a, -4 * a]))

    def test_case1_disjoint_supports(self):
        spec = case_spec(1, 3)
        g, h = draw_pair(spec, record_rng(spec, 0))
        assert not set(np.flatnonzero(g.coeffs)) & set(np.flatnonzero(h.coeffs))

    def test_case4_normalization_monte_carlo(self):
        spec = case_spec(4, 17)
        total = 0.0
        n = 10_000
        for i in range(n):
            g, _ = draw_pair(spec, record_rng(spec, i))
            total += g.power()
        assert total / n == pytest.approx(1.0, abs=0.02)


class TestMakeMixture:
    def test_determinism(self):
        spec = case_spec(3, 5)
        r1 = make_mixture(spec, 12)
        r2 = make_mixture(spec, 12)
        assert np.array_equal(r1.y, r2.y)
        assert np.array_equal(r1.g.coeffs, r2.g.coeffs)
        r3 = make_mixture(spec, 13)
        assert not np.array_equal(r1.y, r3.y)

    def test_additivity_exact(self):
        spec = case_spec(4, 5)
        rec = make_mixture(spec, 0)
        assert np.array_equal(rec.y, rec.s + rec.b)

    def test_mixture_coefficients_sum(self):
        spec = case_spec(2, 5)
        rec = make_mixture(spec, 1)
        a_hat = extract_coefficients(rec.y, spec.K)
        np.testing.assert_allclose(a_hat[1:32], rec.g.coeffs + rec.h.coeffs,
                                   atol=1e-12)

    def test_case1_spectral_disjointness(self):
        spec = case_spec(1, 9)
        rec = make_mixture(spec, 0)
        gs = extract_coefficients(rec.s, spec.K)[1:32]
        gb = extract_coefficients(rec.b, spec.K)[1:32]
        soi = np.asarray(spec.soi_indices) - 1
        intf = np.asarray(spec.intf_indices) - 1
        assert np.max(np.abs(gs[intf])) <= 1e-12
        assert np.max(np.abs(gb[soi])) <= 1e-12

    def test_power_ratio_monte_carlo(self):
        spec = case_spec(2, 21)
        ps, pb = 0.0, 0.0
        n = 2000
        for i in range(n):
            rec = make_mixture(spec, i)
            ps += np.mean(rec.s**2)
            pb += np.mean(rec.b**2)
        assert pb / ps == pytest.approx(16.0, abs=0.8)
        assert ps / n == pytest.approx(1.0, abs=0.02)
