import numpy as np
import pytest
from scipy import stats

from betadiff import (BetaParams, DomainError, RngStream, digamma,
                      sample_beta_logit, sample_log_gamma, trigamma)
from betadiff.chain import sigmoid
from oracles import mean_std_standard_errors


class TestStream:
    def test_equal_seeds_bit_identical(self):
        a = RngStream(123).gen.random(1000)
        b = RngStream(123).gen.random(1000)
        assert np.array_equal(a, b)

    def test_split_streams_differ(self):
        root = RngStream(7)
        a = root.split(0).gen.random(100)
        b = root.split(1).gen.random(100)
        assert not np.array_equal(a, b)

    def test_split_is_deterministic(self):
        assert np.array_equal(RngStream(7).split(3, 1).gen.random(16),
                              RngStream(7).split(3, 1).gen.random(16))

    def test_state_round_trip(self):
        s = RngStream(11)
        s.gen.random(17)
        saved = s.state()
        expected = s.gen.random(8)
        s2 = RngStream(11)
        s2.set_state(saved)
        assert np.array_equal(s2.gen.random(8), expected)


class TestSampleLogGamma:
    def test_domain_error(self, stream):
        with pytest.raises(DomainError):
            sample_log_gamma(stream, 0.0)
        with pytest.raises(DomainError):
            sample_log_gamma(stream, -1.0)

    @pytest.mark.parametrize("shape", [1.0, 0.5, 10000.0])
    def test_mean_matches_digamma(self, shape):
        # E[ln u] = psi(shape), var[ln u] = psi'(shape)
        draws = sample_log_gamma(RngStream(5, key=(int(shape * 10),)),
                                 np.full(10 ** 6, shape))
        mean, se_mean, _, _ = mean_std_standard_errors(draws)
        assert abs(mean - digamma(shape)) <= 4.0 * se_mean

    def test_variance_matches_trigamma(self):
        draws = sample_log_gamma(RngStream(6), np.full(10 ** 6, 2.5))
        _, _, std, se_std = mean_std_standard_errors(draws)
        assert abs(std - np.sqrt(trigamma(2.5))) <= 4.0 * se_std

    def test_tiny_shapes_stay_finite(self, stream):
        for shape in (0.01, 1e-4, 1e-8):
            draws = sample_log_gamma(stream, np.full(20000, shape))
            assert np.all(np.isfinite(draws))

    def test_scalar_input_scalar_output(self, stream):
        out = sample_log_gamma(stream, 3.0)
        assert isinstance(out, float)


class TestSampleBetaLogit:
    def test_uniform_special_case_ks(self):
        # Beta(1,1) = Uniform(0,1): KS on the sigmoid of the logits
        s = RngStream(99)
        logits = sample_beta_logit(s, BetaParams(np.ones(10 ** 6), np.ones(10 ** 6)))
        _, p = stats.kstest(sigmoid(logits), "uniform")
        assert p > 0.01

    def test_symmetric_params_symmetric_logit(self):
        s = RngStream(100)
        logits = sample_beta_logit(s, BetaParams(np.full(10 ** 6, 7.0),
                                                 np.full(10 ** 6, 7.0)))
        mean, se, _, _ = mean_std_standard_errors(logits)
        assert abs(mean) <= 3.0 * se

    def test_extreme_concentration_moments(self):
        # Beta(5000, 5000): mean 1/2, var 0.25/10001
        s = RngStream(101)
        z = sigmoid(sample_beta_logit(s, BetaParams(np.full(10 ** 6, 5000.0),
                                                    np.full(10 ** 6, 5000.0))))
        mean, se_mean, std, se_std = mean_std_standard_errors(z)
        assert abs(mean - 0.5) <= 3.0 * se_mean
        assert abs(std - np.sqrt(0.25 / 10001.0)) <= 3.0 * se_std

    @pytest.mark.parametrize("a", [0.1, 1.0, 10.0, 1e4])
    @pytest.mark.parametrize("b", [0.1, 1.0, 10.0, 1e4])
    def test_moment_grid(self, a, b):
        n = 10 ** 6
        s = RngStream(17, key=(int(a * 10), int(b * 10)))
        z = sigmoid(sample_beta_logit(s, BetaParams(np.full(n, a), np.full(n, b))))
        mean, se_mean, std, se_std = mean_std_standard_errors(z)
        true_mean = a / (a + b)
        true_std = np.sqrt(a * b / ((a + b) ** 2 * (a + b + 1.0)))
        assert abs(mean - true_mean) <= 4.0 * se_mean
        assert abs(std - true_std) <= 4.0 * se_std

    def test_shape_boost_mean(self):
        draws = sample_log_gamma(RngStream(55), np.full(10 ** 6, 0.5))
        mean, se, _, _ = mean_std_standard_errors(draws)
        assert abs(mean - digamma(0.5)) <= 4.0 * se

    def test_beta_params_validation(self):
        with pytest.raises(DomainError):
            BetaParams(0.0, 1.0)
        with pytest.raises(DomainError):
            BetaParams(1.0, np.inf)
