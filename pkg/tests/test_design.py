import math

import numpy as np
import pytest

from base.BaseError import InsufficientDataError
from base.BaseError import InvalidArgumentError
from module.Design.DesignBuilder import DesignBuilder
from module.Design.DesignPoint import DesignPoint
from module.Design.PriorBox import PriorBox
from module.Design.TrainingSet import TrainingSet
from module.Terrain.RoadSpec import RoadSpec
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.NoiseSpec import NoiseSpec

class TestLatinHypercube:

    @pytest.mark.parametrize("n", [2, 10, 198])
    def test_one_point_per_stratum(self, prior: PriorBox, n: int) -> None:
        design = DesignBuilder.lhs_design(n, prior, seed = 17)
        v = np.array([p.v for p in design])
        gd = np.array([p.gd for p in design])

        v_strata = np.floor((v - prior.v_min) / (prior.v_max - prior.v_min) * n).astype(int)
        gd_strata = np.floor((gd - prior.gd_min) / (prior.gd_max - prior.gd_min) * n).astype(int)
        assert sorted(v_strata.tolist()) == list(range(n))
        assert sorted(gd_strata.tolist()) == list(range(n))

    def test_deterministic_for_seed(self, prior: PriorBox) -> None:
        a = DesignBuilder.lhs_design(20, prior, seed = 3)
        b = DesignBuilder.lhs_design(20, prior, seed = 3)
        c = DesignBuilder.lhs_design(20, prior, seed = 4)
        assert [p.asdict() for p in a] == [p.asdict() for p in b]
        assert [p.asdict() for p in a] != [p.asdict() for p in c]

    def test_indices_and_seeds(self, prior: PriorBox) -> None:
        design = DesignBuilder.lhs_design(30, prior, seed = 0)
        assert [p.index for p in design] == list(range(30))
        assert len({p.seed for p in design}) == 30
        assert not any(p.is_simulated() for p in design)

    def test_rejects_single_point(self, prior: PriorBox) -> None:
        with pytest.raises(InvalidArgumentError):
            DesignBuilder.lhs_design(1, prior, seed = 0)

class TestMetric:

    def test_matches_brute_force_variance(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(100):
            a = rng.normal(0.3, 2.0, size = int(rng.integers(2, 2000)))
            mean = math.fsum(a) / a.size
            expected = math.fsum((x - mean) ** 2 for x in a) / a.size
            assert DesignBuilder.metric_f(a) == pytest.approx(expected, rel = 1e-12)

    def test_constant_signal(self) -> None:
        assert DesignBuilder.metric_f(np.full(50, 3.0)) == 0.0

    def test_needs_two_samples(self) -> None:
        with pytest.raises(InsufficientDataError):
            DesignBuilder.metric_f(np.array([1.0]))

class TestTrainingSet:

    def test_point_noise_seeds(self) -> None:
        noise = NoiseSpec(enabled = True, seed = 7)
        assert DesignBuilder.point_noise(noise, 0) == DesignBuilder.point_noise(noise, 0)
        assert DesignBuilder.point_noise(noise, 0).seed != DesignBuilder.point_noise(noise, 1).seed

    def test_build(self, model: HalfCarModel, prior: PriorBox) -> None:
        builder = DesignBuilder(model, RoadSpec(), sample_rate_hz = 120.0, training_length_m = 4.0, max_workers = 2)
        design = DesignBuilder.lhs_design(10, prior, seed = 2)
        ts = builder.build_training_set(design, prior, NoiseSpec.disabled())

        assert ts.get_count() == 10
        assert [p.index for p in ts.points] == list(range(10))
        assert np.all(ts.outputs() > 0)
        np.testing.assert_array_equal(ts.velocities(), [p.v for p in design])
        assert set(ts.provenance) == {"vehicle_digest", "terrain_digest"}

    def test_build_is_reproducible(self, model: HalfCarModel, prior: PriorBox) -> None:
        builder = DesignBuilder(model, RoadSpec(), training_length_m = 3.0, max_workers = 3)
        design = DesignBuilder.lhs_design(10, prior, seed = 8)
        a = builder.build_training_set(design, prior, NoiseSpec(enabled = True, seed = 1))
        b = builder.build_training_set(design, prior, NoiseSpec(enabled = True, seed = 1))
        np.testing.assert_array_equal(a.outputs(), b.outputs())

    def test_rejects_short_training_length(self, model: HalfCarModel) -> None:
        with pytest.raises(InvalidArgumentError):
            DesignBuilder(model, RoadSpec(), training_length_m = 0.1)

    def test_too_few_points(self, prior: PriorBox) -> None:
        points = [DesignPoint(index = i, v = 1.0, gd = 300.0, f = 1.0) for i in range(5)]
        with pytest.raises(InsufficientDataError):
            TrainingSet(points = points, prior = prior, noise = NoiseSpec())

    def test_point_outside_box(self, prior: PriorBox) -> None:
        points = [DesignPoint(index = i, v = 1.0, gd = 300.0, f = 1.0) for i in range(10)]
        points[3].gd = 700.0
        with pytest.raises(InvalidArgumentError):
            TrainingSet(points = points, prior = prior, noise = NoiseSpec())

    def test_unsimulated_point(self, prior: PriorBox) -> None:
        points = [DesignPoint(index = i, v = 1.0, gd = 300.0, f = 1.0) for i in range(10)]
        points[0].f = None
        with pytest.raises(InvalidArgumentError):
            TrainingSet(points = points, prior = prior, noise = NoiseSpec())

    def test_rank_monotonicity(self, synthetic_training_set: TrainingSet) -> None:
        assert DesignBuilder.rank_monotonicity(synthetic_training_set) > 0.8

    def test_rank_monotonicity_detects_inverted_response(self, prior: PriorBox) -> None:
        design = DesignBuilder.lhs_design(40, prior, seed = 5)
        points = [DesignPoint(index = p.index, v = p.v, gd = p.gd, seed = p.seed, f = p.v ** 4 * (700.0 - p.gd)) for p in design]
        ts = TrainingSet(points = points, prior = prior, noise = NoiseSpec.disabled())
        assert DesignBuilder.rank_monotonicity(ts) < -0.8

    def test_rank_monotonicity_needs_speed_spread(self, prior: PriorBox) -> None:
        points = [DesignPoint(index = i, v = 1.0 + 0.1 * (i % 3), gd = 200.0 + 10.0 * i, f = 1.0 + i) for i in range(12)]
        ts = TrainingSet(points = points, prior = prior, noise = NoiseSpec.disabled())
        assert math.isnan(DesignBuilder.rank_monotonicity(ts))

    @pytest.mark.slow
    def test_reference_design_rank(self, reference_training_set: TrainingSet) -> None:
        assert reference_training_set.get_count() == 198
        assert DesignBuilder.rank_monotonicity(reference_training_set) >= DesignBuilder.RANK_THRESHOLD

    @pytest.mark.slow
    def test_simulated_output_grows_with_roughness(self, model: HalfCarModel, prior: PriorBox) -> None:
        builder = DesignBuilder(model, RoadSpec(), training_length_m = 21.0)
        ts = builder.build_training_set(DesignBuilder.lhs_design(60, prior, seed = 2024), prior, NoiseSpec.disabled())
        assert DesignBuilder.rank_monotonicity(ts) > 0.8
        assert math.isfinite(float(np.max(ts.outputs())))
