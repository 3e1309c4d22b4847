import numpy as np
import pytest

from funcal import alpha1, alpha2, simulate_dataset
from funcal.errors import ValidationError


class TestComponentFunctions:
    def test_alpha1_at_zero(self):
        assert alpha1(0.0) == 0.0

    def test_alpha1_reference_value(self):
        # sin(pi/2) = 1, so alpha1(pi/10) = exp(-pi^2/100) = 0.9060180...
        assert alpha1(np.pi / 10) == pytest.approx(np.exp(-np.pi**2 / 100), rel=1e-12)
        assert alpha1(np.pi / 10) == pytest.approx(0.90602, abs=1e-5)

    def test_alpha1_odd(self):
        x = np.linspace(0.01, 3, 50)
        np.testing.assert_allclose(alpha1(-x), -alpha1(x), rtol=1e-13)

    def test_alpha2_branches(self):
        assert alpha2(-1.0) == -2.0
        # boundaries belong to the right-hand branches
        assert alpha2(0.0) == 0.0
        assert alpha2(1.5) == 3.0
        assert alpha2(1.4999999) == 0.0
        assert alpha2(-1e-300) == -2.0

    def test_alpha2_vectorized(self):
        np.testing.assert_array_equal(
            alpha2(np.array([-0.5, 0.0, 1.0, 1.5, 2.0])), [-2.0, 0.0, 0.0, 3.0, 3.0]
        )


class TestSimulateDataset:
    def test_default_grid(self):
        ds = simulate_dataset(seed=0)
        x = ds.x.points
        assert x.shape == (1024,)
        assert x[0] == -1.0
        assert x[-1] == 2.0
        assert ds.data.values.shape == (1024, 100)
        assert ds.weights.values.shape == (2, 100)
        assert ds.alphas.values.shape == (1024, 2)

    def test_no_noise_is_exact_combination(self):
        ds = simulate_dataset(n=7, m=32, noise_sd=0.0, seed=4)
        np.testing.assert_array_equal(
            ds.data.values, ds.alphas.values @ ds.weights.values
        )

    @pytest.mark.parametrize("seed", [0, 1, 99, 12345])
    def test_weight_columns_sum_to_one(self, seed):
        ds = simulate_dataset(n=50, m=16, seed=seed)
        np.testing.assert_allclose(ds.weights.values.sum(axis=0), 1.0, atol=1e-12)

    def test_bit_identical_replay(self):
        a = simulate_dataset(n=9, m=64, seed=77)
        b = simulate_dataset(n=9, m=64, seed=77)
        np.testing.assert_array_equal(a.data.values, b.data.values)
        np.testing.assert_array_equal(a.weights.values, b.weights.values)

    def test_seeds_differ(self):
        a = simulate_dataset(n=5, m=16, seed=1)
        b = simulate_dataset(n=5, m=16, seed=2)
        assert not np.array_equal(a.data.values, b.data.values)

    def test_alphas_match_pointwise_evaluation(self):
        ds = simulate_dataset(n=3, m=128, seed=8)
        np.testing.assert_array_equal(ds.alphas.values[:, 0], alpha1(ds.x.points))
        np.testing.assert_array_equal(ds.alphas.values[:, 1], alpha2(ds.x.points))

    def test_noise_is_centered(self):
        # average residual at one grid point over 200 seeds stays within
        # three standard errors of zero
        m_idx, noise_sd, n_seeds = 10, 0.1, 200
        residuals = []
        for seed in range(n_seeds):
            ds = simulate_dataset(n=2, m=32, noise_sd=noise_sd, seed=seed)
            clean = ds.alphas.values @ ds.weights.values
            residuals.append(ds.data.values[m_idx, 1] - clean[m_idx, 1])
        se = noise_sd / np.sqrt(n_seeds)
        assert abs(np.mean(residuals)) < 3 * se

    def test_invalid_arguments(self):
        with pytest.raises(ValidationError):
            simulate_dataset(n=0, seed=1)
        with pytest.raises(ValidationError):
            simulate_dataset(m=1, seed=1)
        with pytest.raises(ValidationError):
            simulate_dataset(a=2.0, b=-1.0, seed=1)
        with pytest.raises(ValidationError):
            simulate_dataset(noise_sd=-0.1, seed=1)
