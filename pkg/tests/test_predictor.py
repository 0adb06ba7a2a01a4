import copy

import numpy as np
import pytest

from fuzzyfusion.predictor import (
    DegenerateEvaluationError,
    OnlinePredictor,
    PredictorConfig,
    PredictorParams,
    evaluate,
    grad_step,
    gradients,
    predict_next,
    seed_params,
    train_on_window,
)


def make_params(centers, widths, heights, **cfg_kw):
    centers = np.atleast_2d(np.asarray(centers, float))
    m, n_in = centers.shape
    defaults = dict(window_len=n_in + 1, rule_count=m)
    defaults.update(cfg_kw)
    cfg = PredictorConfig(**defaults)
    return PredictorParams(
        centers=centers,
        widths=np.broadcast_to(np.asarray(widths, float), centers.shape).copy(),
        heights=np.asarray(heights, float),
        config=cfg,
    )


def random_params(rng, rule_count, n_inputs):
    cfg = PredictorConfig(window_len=n_inputs + 1, rule_count=rule_count)
    return PredictorParams(
        centers=rng.uniform(-1.0, 1.0, (rule_count, n_inputs)),
        widths=rng.uniform(0.3, 1.5, (rule_count, n_inputs)),
        heights=rng.uniform(-1.0, 1.0, rule_count),
        config=cfg,
    )


class TestConfig:
    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            PredictorConfig(window_len=1)
        with pytest.raises(ValueError):
            PredictorConfig(rule_count=0)
        with pytest.raises(ValueError):
            PredictorConfig(learn_rate=0.0)
        with pytest.raises(ValueError):
            PredictorConfig(max_iters=0)
        with pytest.raises(ValueError):
            PredictorConfig(width_floor=0.0)


class TestParams:
    def test_shape_mismatch_rejected(self):
        cfg = PredictorConfig(window_len=4, rule_count=2)
        with pytest.raises(ValueError):
            PredictorParams(
                centers=np.zeros((2, 2)),
                widths=np.ones((2, 2)),
                heights=np.zeros(2),
                config=cfg,
            )

    def test_width_below_floor_rejected(self):
        with pytest.raises(ValueError):
            make_params([[0.0, 0.0]], 1e-6, [1.0])


class TestEvaluate:
    def test_single_rule_returns_its_height(self):
        params = make_params([[0.0, 0.0, 0.0]], 1.0, [3.7])
        for x in ([0, 0, 0], [5, -2, 1], [10, 10, 10]):
            assert evaluate(params, x) == pytest.approx(3.7)

    def test_symmetric_rules_cancel(self):
        params = make_params([[-1.0], [1.0]], 0.8, [2.5, -2.5])
        assert evaluate(params, [0.0]) == pytest.approx(0.0, abs=1e-12)

    def test_dominant_rule_limit(self):
        # input sits on rule 1's centers; rule 2 is 10 widths away per input
        params = make_params([[0.0, 0.0], [10.0, 10.0]], 1.0, [4.0, -4.0])
        assert evaluate(params, [0.0, 0.0]) == pytest.approx(4.0, abs=1e-10)

    def test_output_within_height_hull(self):
        rng = np.random.default_rng(7)
        params = random_params(rng, rule_count=5, n_inputs=3)
        lo, hi = params.heights.min(), params.heights.max()
        for _ in range(50):
            f = evaluate(params, rng.uniform(-2, 2, 3))
            assert lo - 1e-12 <= f <= hi + 1e-12

    def test_wrong_input_length_rejected(self):
        params = make_params([[0.0, 0.0]], 1.0, [1.0])
        with pytest.raises(ValueError):
            evaluate(params, [1.0])

    def test_degenerate_underflow_raises(self):
        params = make_params([[0.0]], 1e-3, [1.0])
        with pytest.raises(DegenerateEvaluationError):
            evaluate(params, [100.0])


class TestGradStep:
    def test_zero_error_is_identity(self):
        params = make_params([[0.5, -0.5]], 1.0, [2.0])
        target = evaluate(params, [0.1, 0.2])
        before = copy.deepcopy(params)
        e = grad_step(params, [0.1, 0.2], target)
        assert e == 0.0
        np.testing.assert_array_equal(params.heights, before.heights)
        np.testing.assert_array_equal(params.centers, before.centers)
        np.testing.assert_array_equal(params.widths, before.widths)

    def test_single_rule_height_update(self):
        # with one rule z/b = 1, so the height moves by learn_rate*(f - target)
        # while centers and widths stay put (height - f = 0)
        params = make_params([[0.3, 0.3]], 1.0, [1.0], learn_rate=0.1)
        before = copy.deepcopy(params)
        e = grad_step(params, [0.0, 0.5], 2.0)
        assert e == pytest.approx(0.5 * (1.0 - 2.0) ** 2)
        assert params.heights[0] == pytest.approx(1.0 - 0.1 * (1.0 - 2.0))
        np.testing.assert_array_equal(params.centers, before.centers)
        np.testing.assert_array_equal(params.widths, before.widths)

    def test_returns_pre_update_error(self):
        rng = np.random.default_rng(3)
        params = random_params(rng, 3, 2)
        x = rng.uniform(-1, 1, 2)
        f_before = evaluate(params, x)
        e = grad_step(params, x, 0.9)
        assert e == pytest.approx(0.5 * (f_before - 0.9) ** 2)

    def test_width_floor_respected(self):
        # two coincident rules, target far below: the high rule's width takes
        # a step well past the floor and must be clamped onto it
        params = make_params(
            [[0.0], [0.0]], 0.02, [0.0, 1.0], learn_rate=1e-3, width_floor=0.019
        )
        grad_step(params, [0.01], -5.0)
        assert params.widths[1, 0] == 0.019
        assert params.widths.min() >= 0.019

    def test_matches_finite_differences(self):
        # independent oracle: central finite differences of e = 0.5*(f-y)^2
        rng = np.random.default_rng(42)
        rel_tol, abs_floor = 1e-4, 1e-8
        for trial in range(100):
            m = int(rng.integers(1, 7))
            n_in = int(rng.integers(2, 6))
            params = random_params(rng, m, n_in)
            x = rng.uniform(-1.0, 1.0, n_in)
            y = float(rng.uniform(-1.0, 1.0))

            analytic = dict(zip(("heights", "centers", "widths"), gradients(params, x, y)))

            def err_at(p):
                return 0.5 * (evaluate(p, x) - y) ** 2

            for name, grad in analytic.items():
                arr = getattr(params, name)
                fd = np.zeros_like(arr)
                it = np.nditer(arr, flags=["multi_index"])
                for _ in it:
                    idx = it.multi_index
                    h = 1e-6 * max(1.0, abs(arr[idx]))
                    probe = copy.deepcopy(params)
                    getattr(probe, name)[idx] = arr[idx] + h
                    e_plus = err_at(probe)
                    getattr(probe, name)[idx] = arr[idx] - h
                    e_minus = err_at(probe)
                    fd[idx] = (e_plus - e_minus) / (2.0 * h)
                scale = np.maximum(np.abs(fd), np.abs(grad))
                gap = np.abs(grad - fd)
                assert np.all(gap <= np.maximum(rel_tol * scale, abs_floor)), (
                    f"trial {trial}, {name}: max gap {gap.max():.3e}"
                )


class TestTrainOnWindow:
    def test_already_converged_does_nothing(self):
        params = make_params([[0.0, 0.0]], 1.0, [1.5], error_threshold=1e-2)
        before = copy.deepcopy(params)
        iters = train_on_window(params, [0.0, 0.0, 1.5])
        assert iters == 0
        np.testing.assert_array_equal(params.heights, before.heights)

    def test_constant_window_fixed_point(self):
        cfg = PredictorConfig(window_len=5, rule_count=3)
        params = seed_params([2.0] * 5, cfg, np.random.default_rng(0))
        iters = train_on_window(params, [2.0] * 5)
        assert iters == 0
        assert predict_next(params, [2.0] * 5) == pytest.approx(2.0)

    def test_iteration_cap(self):
        params = make_params(
            [[0.0, 0.0]], 1.0, [0.0], max_iters=5, learn_rate=1e-9, error_threshold=1e-12
        )
        assert train_on_window(params, [0.0, 0.0, 10.0]) == 5

    def test_wrong_window_length_rejected(self):
        params = make_params([[0.0, 0.0]], 1.0, [0.0])
        with pytest.raises(ValueError):
            train_on_window(params, [0.0, 0.0])

    def test_training_reduces_error(self):
        rng = np.random.default_rng(11)
        cfg = PredictorConfig(window_len=6, rule_count=4, max_iters=50)
        window = rng.uniform(-1, 1, 6)
        params = seed_params(window, cfg, rng)
        x, target = window[:-1], window[-1]
        e0 = 0.5 * (evaluate(params, x) - target) ** 2
        train_on_window(params, window)
        e1 = 0.5 * (evaluate(params, x) - target) ** 2
        assert e1 <= e0


class TestPredictNext:
    def test_shift_consistency(self):
        rng = np.random.default_rng(5)
        cfg = PredictorConfig(window_len=6, rule_count=3)
        window = rng.uniform(-1, 1, 6)
        params = seed_params(window, cfg, rng)
        assert predict_next(params, window) == evaluate(params, window[1:])

    def test_wrong_window_length_rejected(self):
        params = make_params([[0.0, 0.0]], 1.0, [0.0])
        with pytest.raises(ValueError):
            predict_next(params, [1.0, 2.0])

    def test_constant_signal_prediction(self):
        pred = OnlinePredictor(PredictorConfig(window_len=8, rule_count=4), np.random.default_rng(1))
        for _ in range(30):
            pred.observe(3.25)
        assert pred.prediction == pytest.approx(3.25, abs=1e-3)

    def test_sinusoid_beats_persistence(self):
        # persistence oracle: forecast the next sample as a copy of the last
        cfg = PredictorConfig()
        pred = OnlinePredictor(cfg, np.random.default_rng(123))
        dt, period = 0.01, 2.0
        n_steps, warmup = 3000, 500
        sq_pred, sq_pers, count = 0.0, 0.0, 0
        prev = None
        forecast = None
        for k in range(n_steps):
            x = np.sin(2.0 * np.pi * k * dt / period)
            if k > warmup and forecast is not None and prev is not None:
                sq_pred += (forecast - x) ** 2
                sq_pers += (prev - x) ** 2
                count += 1
            pred.observe(x)
            forecast = pred.prediction
            prev = x
        assert count > 500
        assert pred.degenerate_steps == 0
        rmse_pred = np.sqrt(sq_pred / count)
        rmse_pers = np.sqrt(sq_pers / count)
        assert rmse_pred < rmse_pers


class TestOnlinePredictor:
    def test_no_prediction_until_window_full(self):
        pred = OnlinePredictor(PredictorConfig(window_len=5, rule_count=2), np.random.default_rng(0))
        for k in range(4):
            pred.observe(float(k))
            assert pred.prediction is None
        pred.observe(4.0)
        assert pred.prediction is not None

    def test_seed_params_shapes_and_floor(self):
        cfg = PredictorConfig(window_len=5, rule_count=3, width_floor=0.2)
        params = seed_params([1.0, 1.0, 1.0, 1.0, 1.0], cfg, np.random.default_rng(0))
        assert params.centers.shape == (3, 4)
        assert params.widths.min() >= 0.2
        np.testing.assert_allclose(params.heights, 1.0)
