import math

import numpy as np
import pytest

from conftest import synthetic_log_f
from base.BaseError import InvalidArgumentError
from module.Calibrate.AssessmentRow import AssessmentRow
from module.Calibrate.Calibrator import Calibrator
from module.Calibrate.GridAssessor import GridAssessor
from module.Calibrate.McmcConfig import McmcConfig
from module.Calibrate.Observation import Observation
from module.Calibrate.Posterior import Posterior
from module.Config import Config
from module.Design.DesignBuilder import DesignBuilder
from module.Emulator.Surrogate import Surrogate
from module.Terrain.RoadSpec import RoadSpec
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.NoiseSpec import NoiseSpec

def observation_at(surrogate: Surrogate, v: float, gd: float) -> Observation:
    mean, _ = surrogate.predict(v, gd)
    return Observation(f_obs = mean, v = v, n_samples = 1000)

class TestCalibrate:

    def test_recovers_interior_gd(self, synthetic_surrogate: Surrogate) -> None:
        posterior = Calibrator().calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, 400.0), McmcConfig())
        assert posterior.mean() == pytest.approx(400.0, rel = 0.15)

    def test_posterior_properties(self, synthetic_surrogate: Surrogate) -> None:
        cfg = McmcConfig()
        posterior = Calibrator().calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.0, 320.0), cfg)
        assert posterior.get_count() == cfg.n_total - cfg.n_burn == 4000
        assert np.all(posterior.samples >= 200.0)
        assert np.all(posterior.samples <= 600.0)
        assert 0.0 < posterior.acceptance_rate < 1.0
        assert posterior.samples.min() <= posterior.mean() <= posterior.samples.max()
        assert posterior.lambda_samples.shape == posterior.samples.shape
        assert np.all(posterior.lambda_samples > 0)

    @pytest.mark.parametrize("gd", [300.0, 450.0])
    def test_acceptance_after_tuning(self, synthetic_surrogate: Surrogate, gd: float) -> None:
        posterior = Calibrator().calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, gd), McmcConfig(seed = 12))
        assert 0.1 <= posterior.acceptance_rate <= 0.7

    def test_same_seed_same_chain(self, synthetic_surrogate: Surrogate) -> None:
        obs = observation_at(synthetic_surrogate, 1.5, 350.0)
        a = Calibrator().calibrate(synthetic_surrogate, obs, McmcConfig(n_total = 1000, n_burn = 200, seed = 8))
        b = Calibrator().calibrate(synthetic_surrogate, obs, McmcConfig(n_total = 1000, n_burn = 200, seed = 8))
        np.testing.assert_array_equal(a.samples, b.samples)

    def test_larger_observation_means_rougher(self, synthetic_surrogate: Surrogate) -> None:
        calibrator = Calibrator()
        low = calibrator.calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, 300.0), McmcConfig(seed = 1))
        high = calibrator.calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, 500.0), McmcConfig(seed = 2))
        assert low.mean() <= high.mean() + 0.05 * 400.0

    @pytest.mark.parametrize("gd", [300.0, 400.0, 500.0])
    def test_matches_grid_integration(self, synthetic_surrogate: Surrogate, gd: float) -> None:
        obs = observation_at(synthetic_surrogate, 1.25, gd)
        cfg = McmcConfig(n_total = 20000, n_burn = 2000, seed = 31)
        posterior = Calibrator().calibrate(synthetic_surrogate, obs, cfg)
        _, weights, grid_mean = Calibrator.grid_posterior(synthetic_surrogate, obs, cfg)
        assert weights.sum() == pytest.approx(1.0)
        assert posterior.mean() == pytest.approx(grid_mean, rel = 0.02)

    def test_zero_observation(self, synthetic_surrogate: Surrogate) -> None:
        cfg = McmcConfig()
        posterior = Calibrator().calibrate(synthetic_surrogate, Observation(f_obs = 0.0, v = 1.0), cfg)
        assert np.all(posterior.samples == 200.0)
        assert posterior.acceptance_rate == 0.0
        assert posterior.is_flagged(Calibrator.Flag.ZERO_OBSERVATION)
        assert posterior.is_flagged(Calibrator.Flag.BOUNDARY_PILEUP)

    def test_velocity_outside_box_is_flagged(self, synthetic_surrogate: Surrogate) -> None:
        obs = Observation(f_obs = float(np.exp(synthetic_log_f(2.0, 400.0))), v = 2.2)
        posterior = Calibrator().calibrate(synthetic_surrogate, obs, McmcConfig(n_total = 1000, n_burn = 200))
        assert posterior.is_flagged(Calibrator.Flag.OUTSIDE_BOX)

    def test_reuses_steps_when_not_retuning(self, synthetic_surrogate: Surrogate) -> None:
        calibrator = Calibrator()
        cfg = McmcConfig(n_total = 1000, n_burn = 200, retune_each_call = False)
        calibrator.calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, 400.0), cfg)
        steps = calibrator.tuned_steps
        calibrator.calibrate(synthetic_surrogate, observation_at(synthetic_surrogate, 1.25, 300.0), cfg.with_seed(5))
        assert calibrator.tuned_steps == steps

    @pytest.mark.parametrize(
        "kwargs",
        [{"f_obs": -1.0, "v": 1.0}, {"f_obs": math.nan, "v": 1.0}, {"f_obs": 1.0, "v": 0.0}, {"f_obs": 1.0, "v": 1.0, "n_samples": 1}],
    )
    def test_invalid_observation(self, kwargs: dict) -> None:
        with pytest.raises(InvalidArgumentError):
            Observation(**kwargs)

    def test_invalid_config(self) -> None:
        with pytest.raises(InvalidArgumentError):
            McmcConfig(n_total = 100, n_burn = 100)

class TestSummary:

    def test_boundary_pileup(self) -> None:
        rng = np.random.default_rng(0)
        samples = np.concatenate((rng.uniform(200.0, 208.0, 300), rng.uniform(300.0, 500.0, 700)))
        _, _, flags = Calibrator.posterior_summary(Posterior(samples = samples, gd_min = 200.0, gd_max = 600.0))
        assert Calibrator.Flag.BOUNDARY_PILEUP in flags

    def test_no_pileup_for_interior(self) -> None:
        samples = np.random.default_rng(1).normal(400.0, 20.0, 1000)
        mean, std, flags = Calibrator.posterior_summary(Posterior(samples = samples, gd_min = 200.0, gd_max = 600.0))
        assert flags == []
        assert mean == pytest.approx(400.0, abs = 3.0)
        assert std == pytest.approx(20.0, rel = 0.1)

    def test_multimodal(self) -> None:
        rng = np.random.default_rng(2)
        samples = np.concatenate((rng.normal(260.0, 10.0, 500), rng.normal(540.0, 10.0, 500)))
        _, _, flags = Calibrator.posterior_summary(Posterior(samples = samples, gd_min = 200.0, gd_max = 600.0))
        assert Calibrator.Flag.MULTIMODAL in flags

    def test_constant_samples_single_mode(self) -> None:
        assert Calibrator.count_modes(np.full(100, 300.0), 200.0, 600.0) == 1

    def test_posterior_rejects_out_of_box(self) -> None:
        with pytest.raises(InvalidArgumentError):
            Posterior(samples = np.array([100.0, 300.0]), gd_min = 200.0, gd_max = 600.0)

    def test_histogram_covers_box(self) -> None:
        posterior = Posterior(samples = np.linspace(200.0, 600.0, 400), gd_min = 200.0, gd_max = 600.0)
        counts, edges = posterior.histogram(20)
        assert counts.sum() == 400
        assert edges[0] == 200.0
        assert edges[-1] == 600.0

class TestGridAssessment:

    @pytest.fixture
    def assessor(self, model: HalfCarModel) -> GridAssessor:
        builder = DesignBuilder(model, RoadSpec(), training_length_m = 4.0)
        return GridAssessor(builder, Calibrator(), NoiseSpec.disabled(), seed = 1, max_workers = 2)

    def test_empty_grid(self, assessor: GridAssessor, synthetic_surrogate: Surrogate) -> None:
        assert assessor.grid_assessment(synthetic_surrogate, McmcConfig(), [], [400.0]) == []

    def test_rows_in_order(self, assessor: GridAssessor, synthetic_surrogate: Surrogate) -> None:
        cfg = McmcConfig(n_total = 600, n_burn = 100, step_tune_iters = 100, step_tune_burn = 5)
        rows = assessor.grid_assessment(synthetic_surrogate, cfg, [0.75, 1.25], [300.0, 500.0], reps = 2)
        assert [(r.v, r.gd_true, r.rep) for r in rows] == [
            (v, gd, rep) for v in (0.75, 1.25) for gd in (300.0, 500.0) for rep in range(2)
        ]
        for row in rows:
            assert not row.is_failed()
            assert 200.0 <= row.gd_hat <= 600.0
            assert row.pct_err == pytest.approx(100.0 * (row.gd_hat - row.gd_true) / row.gd_true)
            assert sum(row.histogram) == cfg.retained()

    def test_median_abs_error(self) -> None:
        rows = [
            AssessmentRow(v = 1.0, gd_true = 300.0, rep = 0, pct_err = -10.0),
            AssessmentRow(v = 1.0, gd_true = 300.0, rep = 1, pct_err = 4.0),
            AssessmentRow(v = 1.0, gd_true = 300.0, rep = 2, pct_err = 6.0),
            AssessmentRow(v = 1.0, gd_true = 300.0, rep = 3, error = "CalibrationDegenerateError"),
        ]
        assert GridAssessor.median_abs_error(rows, 1.0, 300.0) == 6.0
        assert math.isnan(GridAssessor.median_abs_error(rows, 2.0, 300.0))

    @pytest.mark.slow
    def test_reference_accuracy(self, model: HalfCarModel, reference_surrogate: Surrogate) -> None:
        config = Config()
        builder = DesignBuilder(model, RoadSpec.from_dict(config.terrain), training_length_m = float(config.design["training_length_m"]))
        assessor = GridAssessor(builder, Calibrator(), NoiseSpec.disabled(), seed = int(config.mcmc["seed"]))
        rows = assessor.grid_assessment(reference_surrogate, McmcConfig.from_dict(config.mcmc), [0.75, 1.25], [250.0, 400.0], reps = 5)
        assert not any(r.is_failed() for r in rows)

        interior = GridAssessor.median_abs_error(rows, 1.25, 400.0)
        corner = GridAssessor.median_abs_error(rows, 0.75, 250.0)
        assert interior <= 20.0
        assert corner > interior
