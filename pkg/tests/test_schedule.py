import numpy as np
import pytest
from numpy.testing import assert_allclose

from betadiff import ConfigError, DomainError, Schedule, alpha, sampling_grid, snr
from betadiff.schedule import (beta_linear, check_monotone, sigmoid_power,
                               sigmoid_schedule)
from conftest import t_for_alpha


class TestAlpha:
    def test_beta_linear_endpoints(self):
        s = beta_linear(19.9, 0.1)
        assert alpha(s, 0.0) == 1.0
        assert alpha(s, 1.0) == pytest.approx(np.exp(-10.05), rel=1e-14)
        assert alpha(s, 1.0) == pytest.approx(4.3185749060341354e-05, rel=1e-12)

    def test_sigmoid_at_zero(self):
        s = sigmoid_schedule(10.0, -13.0)
        assert alpha(s, 0.0) == pytest.approx(1.0 / (1.0 + np.exp(-10.0)), rel=1e-14)
        assert alpha(s, 1.0) == pytest.approx(1.0 / (1.0 + np.exp(13.0)), rel=1e-14)

    def test_sigmoid_power_form(self):
        s = sigmoid_power(-13.0)
        base = 1.0 / (1.0 + np.exp(13.0))
        assert alpha(s, 0.0) == 1.0
        assert alpha(s, 0.5) == pytest.approx(base ** 0.5, rel=1e-14)
        assert alpha(s, 1.0) == pytest.approx(base, rel=1e-14)

    @pytest.mark.parametrize("sched", [beta_linear(19.9, 0.1),
                                       sigmoid_schedule(10.0, -13.0),
                                       sigmoid_power(-13.0)])
    def test_strictly_decreasing_1001_grid(self, sched):
        t = np.linspace(0.0, 1.0, 1001)
        a = alpha(sched, t)
        assert np.all(np.diff(a) < 0.0)
        assert np.all(a[1:] < 1.0) and np.all(a > 0.0)
        check_monotone(sched)

    def test_ordering_consistency(self):
        # alpha(s) > alpha(k) > alpha(t) for s < k < t (divisibility hook)
        sched = beta_linear(19.9, 0.1)
        rng = np.random.default_rng(0)
        for _ in range(100):
            s, k, t = np.sort(rng.uniform(0.0, 1.0, 3))
            if s == k or k == t:
                continue
            assert alpha(sched, s) > alpha(sched, k) > alpha(sched, t)

    def test_domain(self):
        with pytest.raises(DomainError):
            alpha(beta_linear(), -0.1)
        with pytest.raises(DomainError):
            alpha(beta_linear(), 1.5)
        with pytest.raises(ConfigError):
            Schedule("cosine")


class TestSnr:
    def test_simple_value(self):
        # alpha_t * x0 = 0.5, eta = 1 -> 0.5 * 2 / 0.5 = 2
        sched = beta_linear(19.9, 0.1)
        t_half = t_for_alpha(sched, 0.5)
        assert snr(sched, t_half, 1.0 - 1e-12, 1.0) == pytest.approx(2.0, rel=1e-9)

    def test_vanishes_with_signal(self):
        sched = beta_linear(19.9, 0.1)
        assert snr(sched, 1.0, 0.01, 1e4) < 1e-2

    def test_composed_formula(self):
        sched = beta_linear(19.9, 0.1)
        x0, eta = 3.0 / 7.0, 1e4
        a = alpha(sched, 0.5)
        expect = a * x0 * (eta + 1.0) / (1.0 - a * x0)
        assert snr(sched, 0.5, x0, eta) == pytest.approx(expect, rel=1e-15)

    def test_domain_error_at_saturation(self):
        sched = beta_linear(19.9, 0.1)
        with pytest.raises(DomainError):
            snr(sched, 0.0, 1.0, 10.0)  # alpha * x0 = 1


class TestSamplingGrid:
    def test_j2(self):
        assert_allclose(sampling_grid(2), [0.0, 1e-5, 1.0], rtol=0, atol=0)

    def test_j3(self):
        assert_allclose(sampling_grid(3), [0.0, 1e-5, 0.500005, 1.0],
                        rtol=1e-15)

    def test_j200_monotone(self):
        g = sampling_grid(200)
        assert len(g) == 201
        assert g[0] == 0.0 and g[1] == 1e-5 and g[-1] == 1.0
        assert np.all(np.diff(g) > 0.0)

    def test_rejects_small_nfe(self):
        with pytest.raises(ConfigError):
            sampling_grid(1)
