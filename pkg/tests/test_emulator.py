import dataclasses
import json

import numpy as np
import pytest

from conftest import synthetic_log_f
from base.BaseError import InvalidArgumentError
from base.BaseError import LoadFailedError
from base.BaseError import MissingArtifactError
from module.Design.PriorBox import PriorBox
from module.Design.TrainingSet import TrainingSet
from module.Emulator.EmulatorConfig import EmulatorConfig
from module.Emulator.EmulatorTrainer import EmulatorTrainer
from module.Emulator.Surrogate import Surrogate
from module.Emulator.SurrogateHyper import SurrogateHyper

class TestSurrogate:

    def test_interpolates_training_points(self, synthetic_training_set: TrainingSet) -> None:
        surrogate = EmulatorTrainer.fit(synthetic_training_set, SurrogateHyper(beta_v = 20.0, beta_gd = 20.0, lambda_z = 1.0)).interpolating()
        assert surrogate.hyper.nugget(surrogate.nugget_floor) == surrogate.nugget_floor == EmulatorConfig().nugget_floor
        mu, _ = surrogate.predict_log(synthetic_training_set.velocities(), synthetic_training_set.gds())
        np.testing.assert_allclose(np.exp(mu), synthetic_training_set.outputs(), rtol = 1e-3)

    def test_prediction_tracks_response(self, synthetic_surrogate: Surrogate) -> None:
        mean, std = synthetic_surrogate.predict(1.25, 400.0)
        assert mean == pytest.approx(float(np.exp(synthetic_log_f(1.25, 400.0))), rel = 0.05)
        assert std >= 0.0

    def test_within_neighbour_envelope(self, synthetic_surrogate: Surrogate, synthetic_training_set: TrainingSet) -> None:
        x = synthetic_training_set.prior.scale(synthetic_training_set.velocities(), synthetic_training_set.gds())
        target = synthetic_training_set.prior.scale(1.25, 400.0)[0]
        nearest = np.argsort(np.sum((x - target) ** 2, axis = 1))[:10]
        f = synthetic_training_set.outputs()[nearest]
        mean, _ = synthetic_surrogate.predict(1.25, 400.0)
        assert f.min() <= mean <= f.max()

    def test_predictions_are_positive(self, synthetic_surrogate: Surrogate) -> None:
        v, gd = np.meshgrid(np.linspace(0.5, 2.0, 7), np.linspace(200.0, 600.0, 9))
        mean, std = synthetic_surrogate.predict_many(v.ravel(), gd.ravel())
        assert np.all(mean > 0)
        assert np.all(std >= 0)

    def test_outside_box_still_predicts(self, synthetic_surrogate: Surrogate) -> None:
        mean, _ = synthetic_surrogate.predict(2.5, 400.0)
        assert mean > 0

    def test_loo_error(self, synthetic_surrogate: Surrogate, synthetic_training_set: TrainingSet) -> None:
        f = synthetic_training_set.outputs()
        error = np.median(np.abs(synthetic_surrogate.loo() - f))
        assert error < 0.25 * (f.max() - f.min())

    def test_std_grows_away_from_data(self, synthetic_surrogate: Surrogate, synthetic_training_set: TrainingSet) -> None:
        point = synthetic_training_set.points[0]
        _, std_train = synthetic_surrogate.predict_log(point.v, point.gd)
        _, std_far = synthetic_surrogate.predict_log(6.0, 3000.0)
        assert std_train[0] <= std_far[0]

    @pytest.mark.parametrize("count", [2, 17, 50])
    def test_kernel_symmetric_psd(self, count: int) -> None:
        x = np.random.default_rng(count).uniform(0.0, 1.0, (count, 2))
        k = Surrogate.kernel(x, x, SurrogateHyper(beta_v = 3.0, beta_gd = 0.5, lambda_z = 2.0))
        np.testing.assert_allclose(k, k.T, rtol = 0, atol = 1e-15)
        assert np.min(np.linalg.eigvalsh(k)) >= -1e-10

    def test_prediction_is_continuous(self, synthetic_surrogate: Surrogate) -> None:
        mean, std = synthetic_surrogate.predict_many(np.array((1.1, 1.1)), np.array((333.0, 333.0 + 1.0e-6)))
        assert mean[1] == pytest.approx(mean[0], rel = 1e-6)
        assert std[1] == pytest.approx(std[0], rel = 1e-6)

    def test_training_outputs_round_trip(self, synthetic_surrogate: Surrogate, synthetic_training_set: TrainingSet) -> None:
        np.testing.assert_allclose(synthetic_surrogate.training_outputs(), synthetic_training_set.outputs(), rtol = 1e-12)

class TestPersistence:

    def test_save_and_load(self, tmp_path, synthetic_surrogate: Surrogate) -> None:
        path = synthetic_surrogate.save(str(tmp_path / "surrogate.json"))
        loaded = Surrogate.load(path, prior = synthetic_surrogate.prior)
        assert loaded.digest() == synthetic_surrogate.digest()
        assert loaded.warnings == []
        assert loaded.predict(1.0, 300.0) == pytest.approx(synthetic_surrogate.predict(1.0, 300.0), rel = 1e-12)

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(MissingArtifactError):
            Surrogate.load(str(tmp_path / "none.json"))

    def test_tampered_file(self, tmp_path, synthetic_surrogate: Surrogate) -> None:
        path = synthetic_surrogate.save(str(tmp_path / "surrogate.json"))
        with open(path, "r", encoding = "utf-8") as reader:
            data = json.load(reader)
        data["surrogate"]["y_mean"] = data["surrogate"]["y_mean"] + 1.0
        with open(path, "w", encoding = "utf-8") as writer:
            json.dump(data, writer)

        with pytest.raises(LoadFailedError):
            Surrogate.load(path)

    def test_not_json(self, tmp_path) -> None:
        path = tmp_path / "surrogate.json"
        path.write_text("not json", encoding = "utf-8")
        with pytest.raises(LoadFailedError):
            Surrogate.load(str(path))

    def test_mismatch_warnings(self, tmp_path, synthetic_training_set: TrainingSet) -> None:
        surrogate = EmulatorTrainer.fit(synthetic_training_set, SurrogateHyper(), config_digest = "abc")
        path = surrogate.save(str(tmp_path / "surrogate.json"))
        loaded = Surrogate.load(path, prior = PriorBox(gd_max = 700.0), config_digest = "def")
        assert loaded.warnings == ["prior_mismatch", "config_mismatch"]

    def test_noise_case_is_recorded(self, synthetic_surrogate: Surrogate) -> None:
        assert synthetic_surrogate.noise_case == "A"

class TestTrainer:

    def test_rejects_short_chain(self) -> None:
        with pytest.raises(InvalidArgumentError):
            EmulatorConfig(iters = 10)

    def test_log_prior_has_jacobian(self) -> None:
        trainer = EmulatorTrainer(EmulatorConfig())
        theta = np.zeros(4)
        assert trainer.log_prior(theta) == pytest.approx(-float(np.sum(trainer.rates)))

    def test_train(self, synthetic_training_set: TrainingSet) -> None:
        trainer = EmulatorTrainer(EmulatorConfig(iters = 1000, seed = 4))
        surrogate = trainer.train(synthetic_training_set)
        assert np.all(surrogate.hyper.as_array() > 0)

        f = synthetic_training_set.outputs()
        assert np.median(np.abs(surrogate.loo() - f)) < 0.25 * (f.max() - f.min())

    def test_selected_hyper_beats_prior_draws(self, synthetic_training_set: TrainingSet) -> None:
        trainer = EmulatorTrainer(EmulatorConfig(iters = 4000, seed = 4))
        surrogate = trainer.train(synthetic_training_set)
        selected = surrogate.log_likelihood()

        draws = np.random.default_rng(21).gamma(trainer.shapes, 1.0 / trainer.rates, (100, 4))
        for draw in draws:
            assert selected >= surrogate.log_likelihood(SurrogateHyper(*(float(v) for v in draw)))

    def test_train_is_reproducible(self, synthetic_training_set: TrainingSet) -> None:
        a = EmulatorTrainer(EmulatorConfig(iters = 1000, seed = 9)).train(synthetic_training_set)
        b = EmulatorTrainer(EmulatorConfig(iters = 1000, seed = 9)).train(synthetic_training_set)
        assert a.hyper == b.hyper

    def test_rejects_non_positive_outputs(self, synthetic_training_set: TrainingSet) -> None:
        zero = TrainingSet(
            points = [dataclasses.replace(p, f = 0.0) if p.index == 0 else p for p in synthetic_training_set.points],
            prior = synthetic_training_set.prior,
            noise = synthetic_training_set.noise,
        )
        with pytest.raises(InvalidArgumentError):
            EmulatorTrainer.fit(zero, SurrogateHyper())

class TestReferenceFidelity:

    @pytest.mark.slow
    def test_loo_error(self, reference_surrogate: Surrogate, reference_training_set: TrainingSet) -> None:
        f = reference_training_set.outputs()
        assert np.median(np.abs(reference_surrogate.loo() - f)) < 0.25 * (f.max() - f.min())

    # 相关长度取短，使核矩阵在 198 点上良态
    @pytest.mark.slow
    def test_interpolates_with_nugget_floor(self, reference_training_set: TrainingSet) -> None:
        surrogate = EmulatorTrainer.fit(reference_training_set, SurrogateHyper(beta_v = 200.0, beta_gd = 200.0, lambda_z = 1.0)).interpolating()
        mu, _ = surrogate.predict_log(reference_training_set.velocities(), reference_training_set.gds())
        np.testing.assert_allclose(np.exp(mu), reference_training_set.outputs(), rtol = 1e-3)
