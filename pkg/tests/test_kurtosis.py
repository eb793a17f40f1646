import math

import numpy as np
import pytest

from ofdm_scss import MomentAccumulator, case_spec, export_sweep, kurtosis_sweep


def single_pass(x):
    acc = MomentAccumulator.zeros(x.shape[1])
    acc.add_batch(x)
    return acc


class TestMomentAccumulator:
    def test_merge_matches_single_pass(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal((5000, 7)) * 3 + 1
        whole = single_pass(x)
        merged = single_pass(x[:1234])
        merged.merge(single_pass(x[1234:]))
        assert merged.count == whole.count
        np.testing.assert_allclose(merged.mean, whole.mean, rtol=1e-8)
        np.testing.assert_allclose(merged.m2, whole.m2, rtol=1e-8)
        np.testing.assert_allclose(merged.m4, whole.m4, rtol=1e-8)

    def test_merge_associative_commutative(self):
        rng = np.random.default_rng(1)
        parts = [rng.standard_normal((n, 4)) for n in (100, 700, 3000)]
        a, b, c = (single_pass(p) for p in parts)
        ab_c = single_pass(parts[0])
        ab_c.merge(single_pass(parts[1]))
        ab_c.merge(single_pass(parts[2]))
        c_ba = single_pass(parts[2])
        c_ba.merge(single_pass(parts[1]))
        c_ba.merge(single_pass(parts[0]))
        np.testing.assert_allclose(ab_c.m4, c_ba.m4, rtol=1e-8)
        np.testing.assert_allclose(ab_c.m2, c_ba.m2, rtol=1e-8)

    def test_merge_into_empty(self):
        rng = np.random.default_rng(2)
        x = rng.standard_normal((50, 3))
        acc = MomentAccumulator.zeros(3)
        acc.merge(single_pass(x))
        np.testing.assert_allclose(acc.m2, single_pass(x).m2)


class TestKurtosisSweep:
    def test_gaussian_control(self):
        spec = case_spec(4, 0)
        n = 200_000
        sweep = kurtosis_sweep(spec, [32], n, 0, gaussian_control=True)
        k = sweep.entries[0].per_bin_mean
        assert abs(k - 3.0) <= 5 * math.sqrt(24 / n)

    def test_plateau_below_k(self):
        spec = case_spec(4, 3)
        sweep = kurtosis_sweep(spec, [40, 48, 56], 30_000, 3)
        for e in sweep.entries:
            assert 2.7 <= e.per_bin_mean <= 3.3
            assert 2.7 <= e.pooled <= 3.3
            assert e.excluded_bins == 0

    def test_pooled_spike_at_double_window(self):
        spec = case_spec(4, 3)
        sweep = kurtosis_sweep(spec, [48, 128], 30_000, 3)
        by_w = {e.W: e for e in sweep.entries}
        assert by_w[128].pooled >= by_w[48].pooled + 0.5
        assert by_w[128].excluded_bins == 72  # odd bins vanish for W = 2K

    def test_exact_window_is_sub_gaussian(self):
        # At W = K the bins land on the discrete superconstellation, whose
        # kurtosis is below 3: the departure from Gaussianity at the exact
        # transform size points down, not up.
        spec = case_spec(4, 3)
        sweep = kurtosis_sweep(spec, [64], 30_000, 3, offset_policy="fixed")
        e = sweep.entries[0]
        assert e.per_bin_mean < 2.0
        assert e.excluded_bins == 8

    def test_scale_invariance(self):
        # kurtosis is exactly invariant to scaling the windows; realize it by
        # scaling accumulated moments directly
        rng = np.random.default_rng(5)
        x = rng.standard_normal((4000, 6))
        for c in (1e-3, 7.0):
            a, b = single_pass(x), single_pass(c * x)
            np.testing.assert_allclose(a.bin_kurtosis(), b.bin_kurtosis(),
                                       rtol=1e-6)

    def test_deterministic_across_threads(self):
        spec = case_spec(2, 9)
        s1 = kurtosis_sweep(spec, [24], 20_000, 9, threads=1, chunk_size=4096)
        s2 = kurtosis_sweep(spec, [24], 20_000, 9, threads=4, chunk_size=4096)
        assert s1.entries[0].pooled == s2.entries[0].pooled
        np.testing.assert_array_equal(s1.entries[0].per_bin, s2.entries[0].per_bin)

    def test_rejects_oversized_window(self):
        spec = case_spec(2, 0)
        with pytest.raises(ValueError):
            kurtosis_sweep(spec, [spec.N + 1], 100, 0)


class TestExportSweep:
    def test_empty_sweep(self, tmp_path):
        spec = case_spec(2, 0)
        sweep = kurtosis_sweep(spec, [], 100, 0)
        path = tmp_path / "empty.csv"
        export_sweep(sweep, path)
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith("W,")

    def test_rows_ascending_and_reexport_identical(self, tmp_path):
        spec = case_spec(4, 1)
        sweep = kurtosis_sweep(spec, [64, 48], 5000, 1, strict_sequential=True)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        export_sweep(sweep, p1)
        export_sweep(sweep, p2)
        assert p1.read_bytes() == p2.read_bytes()
        rows = p1.read_text().strip().splitlines()
        assert len(rows) == 3
        assert rows[1].startswith("48,") and rows[2].startswith("64,")
