import numpy as np
import pytest

from fuzzyfusion.metrics import iae, itae, peak_to_peak_tail, summarize


class TestIae:
    def test_zero_signal(self):
        assert iae(np.zeros(100), 0.01) == 0.0

    def test_unit_error_over_two_seconds(self):
        # analytic: integral of 1 over [0, 2] = 2
        errors = np.ones(201)
        assert iae(errors, 0.01) == pytest.approx(2.0, abs=1e-12)

    def test_scaling_linearity(self):
        rng = np.random.default_rng(1)
        e = rng.normal(size=500)
        assert iae(2.0 * e, 0.01) == pytest.approx(2.0 * iae(e, 0.01), rel=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            iae([], 0.01)

    def test_segment_additivity(self):
        # trapezoid over [0, T] equals the sum over [0, t1] and [t1, T]
        rng = np.random.default_rng(2)
        e = rng.normal(size=301)
        k = 120
        whole = iae(e, 0.01)
        parts = iae(e[: k + 1], 0.01) + iae(e[k:], 0.01)
        assert whole == pytest.approx(parts, abs=1e-9)

    def test_monotone_in_horizon(self):
        rng = np.random.default_rng(3)
        e = rng.normal(size=200)
        values = [iae(e[:n], 0.01) for n in range(2, 200, 13)]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))


class TestItae:
    def test_zero_signal(self):
        assert itae(np.zeros(100), 0.01) == 0.0

    def test_unit_error_over_two_seconds(self):
        # analytic: integral of t over [0, 2] = 2
        errors = np.ones(201)
        assert itae(errors, 0.01) == pytest.approx(2.0, abs=1e-6)

    def test_late_burst_costs_more(self):
        early = np.zeros(500)
        early[50:60] = 1.0
        late = np.zeros(500)
        late[400:410] = 1.0
        assert itae(late, 0.01) > itae(early, 0.01)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            itae([], 0.01)


class TestPeakToPeakTail:
    def test_constant_tail(self):
        assert peak_to_peak_tail(np.full(300, 1.7), 0.01, 1.0) == 0.0

    def test_sinusoid_amplitude(self):
        t = np.arange(0, 20, 0.01)
        assert peak_to_peak_tail(np.sin(t), 0.01, 5.0) == pytest.approx(2.0, abs=1e-3)

    def test_single_sample_tail(self):
        signal = np.arange(11, dtype=float)
        assert peak_to_peak_tail(signal, 1.0, 10.0) == 0.0

    def test_tail_beyond_duration_rejected(self):
        with pytest.raises(ValueError):
            peak_to_peak_tail(np.ones(10), 0.01, 1.0)

    def test_tail_restriction(self):
        signal = np.zeros(200)
        signal[:100] = 5.0  # excluded by tail_start = 1.0 at dt = 0.01
        assert peak_to_peak_tail(signal, 0.01, 1.0) == 0.0


class TestSummarize:
    def test_report_fields(self):
        errors = np.ones(201)
        report = summarize(errors, 0.01, 1.0)
        assert report.iae == pytest.approx(2.0, abs=1e-12)
        assert report.itae == pytest.approx(2.0, abs=1e-6)
        assert report.peak_to_peak_tail == 0.0
        assert report.horizon == pytest.approx(2.0)
