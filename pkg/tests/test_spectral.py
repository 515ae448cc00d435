import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asbsr import InvalidArgument
from asbsr.spectral import msed_zone, sparsity, truncate_spectrum
from asbsr.transforms import dct2_forward, dct2_inverse


def brute_force_min_zone(spectrum, target):
    """Minimum number of cells (DC included) whose complement energy/N <= target."""
    e = spectrum.ravel() ** 2
    n = e.size
    others = e[1:]
    k = others.size
    bits = (np.arange(2**k)[:, None] >> np.arange(k)[None, :]) & 1
    dropped = (1 - bits) @ others / n
    ok = dropped <= target
    return 1 + int(bits.sum(axis=1)[ok].min())


class TestMsedZone:
    def test_zero_budget_keeps_all_nonzero(self, rng):
        spec = np.zeros((6, 6))
        spec[rng.integers(0, 6, 8), rng.integers(0, 6, 8)] = rng.standard_normal(8) + 5
        mask = msed_zone(spec, mse=0.0)
        expected = spec != 0
        expected[0, 0] = True
        np.testing.assert_array_equal(mask, expected)

    def test_large_budget_leaves_dc(self, rng):
        spec = rng.standard_normal((5, 7))
        mask = msed_zone(spec, mse=np.sum(spec**2) / spec.size)
        assert mask.sum() == 1 and mask[0, 0]

    def test_hand_example(self):
        spec = np.zeros((8, 8))
        spec[0, 0], spec[2, 5], spec[7, 7] = 10.0, 3.0, 1.0
        mask = msed_zone(spec, mse=1.0 / 64)
        assert set(map(tuple, np.argwhere(mask))) == {(0, 0), (2, 5)}
        # exhaustive over subsets of the three nonzero cells
        cells = [(0, 0), (2, 5), (7, 7)]
        best = min(
            len(s)
            for r in range(4)
            for s in itertools.combinations(cells, r)
            if (0, 0) in s and sum(spec[c] ** 2 for c in cells if c not in s) / 64 <= 1 / 64
        )
        assert mask.sum() == best

    def test_dc_always_included(self):
        spec = np.zeros((4, 4))
        spec[3, 3] = 5.0
        mask = msed_zone(spec, mse=0.0)
        assert mask[0, 0] and mask[3, 3] and mask.sum() == 2

    def test_rmse_target_is_squared(self, rng):
        spec = rng.standard_normal((8, 8))
        np.testing.assert_array_equal(msed_zone(spec, rmse=0.3), msed_zone(spec, mse=0.09))

    def test_ties_broken_row_major(self):
        spec = np.zeros((3, 3))
        spec[0, 0] = 1.0
        spec[1, 2] = spec[2, 0] = 2.0
        mask = msed_zone(spec, mse=4.0 / 9)
        assert mask[1, 2] and not mask[2, 0]

    @pytest.mark.parametrize("kwargs", [{"mse": -1.0}, {"rmse": -0.5}, {}, {"mse": 1.0, "rmse": 1.0}])
    def test_invalid_targets(self, kwargs):
        with pytest.raises(InvalidArgument):
            msed_zone(np.ones((2, 2)), **kwargs)

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(1, 4),
        st.integers(1, 4),
        st.integers(0, 2**32 - 1),
        st.floats(0.0, 1.0),
    )
    def test_greedy_is_minimal_small_grids(self, ny, nx, seed, frac):
        spec = np.round(np.random.default_rng(seed).standard_normal((ny, nx)), 1)
        target = frac * np.sum(spec**2) / spec.size
        assert msed_zone(spec, mse=target).sum() == brute_force_min_zone(spec, target)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 1), st.floats(0, 1))
    def test_sparsity_non_increasing_in_target(self, seed, t1, t2):
        spec = np.random.default_rng(seed).standard_normal((8, 8))
        lo, hi = sorted((t1, t2))
        assert sparsity(msed_zone(spec, mse=hi)) <= sparsity(msed_zone(spec, mse=lo))


class TestSparsity:
    def test_full(self):
        assert sparsity(np.ones((4, 5), bool)) == 1.0

    def test_single_cell_512(self):
        m = np.zeros((512, 512), bool)
        m[0, 0] = True
        assert sparsity(m) == 1 / 262144

    def test_five_of_512(self):
        m = np.zeros((1, 512), bool)
        m[0, [0, 51, 153, 256, 358]] = True
        assert sparsity(m) == pytest.approx(5 / 512)
        assert sparsity(m) == pytest.approx(0.0098, abs=1e-4)

    def test_empty_mask_rejected(self):
        with pytest.raises(InvalidArgument):
            sparsity(np.zeros((3, 3), bool))


class TestTruncate:
    def test_full_mask(self, rng):
        spec = rng.standard_normal((5, 5))
        bs = truncate_spectrum(spec, np.ones((5, 5), bool))
        np.testing.assert_array_equal(bs.spectrum, spec)
        assert bs.mse == 0

    def test_constant_image_dc_mask(self):
        spec = dct2_forward(np.full((8, 8), 7.0))
        mask = np.zeros((8, 8), bool)
        mask[0, 0] = True
        bs = truncate_spectrum(spec, mask)
        np.testing.assert_allclose(bs.spectrum, spec, atol=1e-12)
        assert bs.mse == pytest.approx(0.0, abs=1e-24)

    def test_mse_matches_spatial_error(self, rng):
        img = rng.uniform(0, 255, (16, 16))
        mask = rng.random((16, 16)) < 0.3
        mask[0, 0] = True
        bs = truncate_spectrum(dct2_forward(img), mask)
        spatial = np.mean((img - dct2_inverse(bs.spectrum)) ** 2)
        assert bs.mse == pytest.approx(spatial, rel=1e-9)
        assert bs.rmse == pytest.approx(np.sqrt(spatial), rel=1e-9)

    def test_enlarging_mask_never_increases_mse(self, rng):
        spec = rng.standard_normal((10, 10))
        order = rng.permutation(100)
        mask = np.zeros(100, bool)
        last = np.inf
        for i in order:
            mask[i] = True
            mse = truncate_spectrum(spec, mask.reshape(10, 10)).mse
            assert mse <= last
            last = mse

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgument):
            truncate_spectrum(np.zeros((4, 4)), np.ones((4, 5), bool))
