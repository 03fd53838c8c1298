import math

import numpy as np
import pytest

from base.Base import Base
from base.BaseError import InsufficientTrackError
from base.BaseError import InvalidArgumentError
from module.Calibrate.McmcConfig import McmcConfig
from module.Config import Config
from module.Control.ControllerConfig import ControllerConfig
from module.Design.DesignBuilder import DesignBuilder
from module.Emulator.Surrogate import Surrogate
from module.Loop.LoopConfig import LoopConfig
from module.Loop.LoopRecord import LoopRecord
from module.Loop.LoopRunner import LoopRunner
from module.Loop.TrackSpec import TrackSpec
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.NoiseSpec import NoiseSpec

FAST_MCMC = McmcConfig(n_total = 600, n_burn = 100, step_tune_iters = 100, step_tune_burn = 5)

@pytest.fixture(scope = "module")
def track() -> TrackSpec:
    return TrackSpec(segments = ((6.0, 300.0), (6.0, 500.0)), seed = 4)

@pytest.fixture(scope = "module")
def runner(model: HalfCarModel, synthetic_surrogate: Surrogate) -> LoopRunner:
    return LoopRunner(model, synthetic_surrogate, FAST_MCMC, ControllerConfig(), NoiseSpec(sigma = 1.0))

class TestTrack:

    def test_reference(self) -> None:
        track = TrackSpec.reference(seed = 1)
        assert track.segments == ((50.0, 300.0), (50.0, 500.0), (50.0, 300.0))
        assert track.total_length() == 150.0

    def test_build(self, track: TrackSpec) -> None:
        profile, boundaries = track.build()
        assert boundaries.size == 2
        assert profile.length() == pytest.approx(boundaries[-1])
        assert track.gd_at(1.0, boundaries) == 300.0
        assert track.gd_at(boundaries[0] + 0.01, boundaries) == 500.0
        assert track.gd_at(profile.length(), boundaries) == 500.0

    def test_round_trip_dict(self, track: TrackSpec) -> None:
        assert TrackSpec.from_dict(track.asdict()) == track

    def test_rejects_empty(self) -> None:
        with pytest.raises(InvalidArgumentError):
            TrackSpec(segments = ())

class TestRun:

    @pytest.fixture(scope = "class")
    def result(self, runner: LoopRunner, track: TrackSpec) -> tuple[list[LoopRecord], LoopConfig]:
        cfg = LoopConfig(buffer_len = 120, trigger_stride = 60, seed = 2)
        return runner.run(track, cfg), cfg

    def test_record_layout(self, result: tuple[list[LoopRecord], LoopConfig]) -> None:
        trace, cfg = result
        assert trace[0].kind == Base.RecordKind.START
        assert trace[-1].kind == Base.RecordKind.END
        events = [r for r in trace if r.kind in (Base.RecordKind.CALIBRATION, Base.RecordKind.FAILED)]
        assert len(events) > 5
        for k, r in enumerate(events):
            assert r.window_end == cfg.buffer_len + k * cfg.trigger_stride
            assert r.window_end - r.window_start == cfg.buffer_len

    def test_buffer_holds_last_samples(self, runner: LoopRunner, result: tuple[list[LoopRecord], LoopConfig]) -> None:
        trace, _ = result
        imu = runner.get_imu()
        for r in trace:
            if r.is_calibration():
                assert r.f_obs == pytest.approx(DesignBuilder.metric_f(imu.a_front[r.window_start : r.window_end]), rel = 1e-12)
                assert r.x == pytest.approx(imu.positions_m[r.window_end - 1])

    def test_commands_within_bounds(self, result: tuple[list[LoopRecord], LoopConfig]) -> None:
        trace, _ = result
        for r in trace:
            assert 1.0 <= r.v_cmd <= 2.0
            if r.is_calibration():
                assert 200.0 <= r.gd_hat <= 600.0

    def test_command_applies_immediately(self, runner: LoopRunner, result: tuple[list[LoopRecord], LoopConfig]) -> None:
        trace, _ = result
        imu = runner.get_imu()
        first = next(r for r in trace if r.is_calibration())
        assert np.all(imu.v_commanded[: first.window_end] == 1.5)
        assert imu.v_commanded[first.window_end] == first.v_cmd

    def test_ground_truth_follows_segments(self, track: TrackSpec, result: tuple[list[LoopRecord], LoopConfig]) -> None:
        trace, _ = result
        for r in trace:
            if r.is_calibration():
                assert r.gd_true == (300.0 if r.x <= 6.0 else 500.0) or abs(r.x - 6.0) < 0.05

    def test_delay(self, runner: LoopRunner, track: TrackSpec) -> None:
        cfg = LoopConfig(buffer_len = 120, trigger_stride = 60, delay_samples = 30, seed = 2)
        trace = runner.run(track, cfg)
        imu = runner.get_imu()
        first = next(r for r in trace if r.is_calibration())
        assert np.all(imu.v_commanded[: first.window_end + cfg.delay_samples] == 1.5)
        assert imu.v_commanded[first.window_end + cfg.delay_samples] == first.v_cmd

    def test_reproducible(self, runner: LoopRunner, track: TrackSpec) -> None:
        cfg = LoopConfig(buffer_len = 120, trigger_stride = 120, noise_case = "B", seed = 6)
        a = runner.run(track, cfg)
        b = runner.run(track, cfg)
        assert [r.gd_hat for r in a if r.is_calibration()] == [r.gd_hat for r in b if r.is_calibration()]

    def test_noise_case_b_adds_noise(self, runner: LoopRunner, track: TrackSpec) -> None:
        runner.run(track, LoopConfig(buffer_len = 600, trigger_stride = 600, noise_case = "A", seed = 6))
        clean = runner.get_imu().a_front[:600].copy()
        runner.run(track, LoopConfig(buffer_len = 600, trigger_stride = 600, noise_case = "B", seed = 6))
        noisy = runner.get_imu().a_front[:600]
        assert np.var(noisy - clean) == pytest.approx(1.0, rel = 0.3)

    def test_track_too_short(self, runner: LoopRunner) -> None:
        with pytest.raises(InsufficientTrackError):
            runner.run(TrackSpec(segments = ((10.0, 300.0), )), LoopConfig())

    def test_reserve_keeps_samples(self) -> None:
        samples = np.arange(12.0).reshape(3, 4)
        assert LoopRunner.reserve(samples, 4) is samples

        grown = LoopRunner.reserve(samples, 5)
        assert grown.shape == (3, 8)
        np.testing.assert_array_equal(grown[:, :4], samples)
        assert LoopRunner.reserve(samples, 20).shape == (3, 20)

    def test_capacity_covers_slowest_pass(self, track: TrackSpec, result: tuple[list[LoopRecord], LoopConfig], runner: LoopRunner) -> None:
        _, cfg = result
        profile, _ = track.build()
        assert runner.get_imu().get_count() <= LoopRunner.estimate_capacity(profile.length(), 1.0, cfg)

class TestReferenceTrack:

    @pytest.fixture(scope = "class")
    def reference_runner(self, model: HalfCarModel, reference_surrogate: Surrogate) -> LoopRunner:
        config = Config()
        return LoopRunner(
            model = model,
            surrogate = reference_surrogate,
            mcmc = McmcConfig.from_dict(config.mcmc),
            control = ControllerConfig.from_dict(config.control),
            noise = NoiseSpec(sigma = float(config.noise["sigma"])),
        )

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_modes_follow_rough_segment(self, reference_runner: LoopRunner, seed: int) -> None:
        track = TrackSpec.reference(seed = seed)
        trace = reference_runner.run(track, LoopConfig(seed = seed))
        calibrations = [r for r in trace if r.is_calibration()]

        assert any(r.mode == Base.ControlMode.SAFETY and 50.0 <= r.x <= 70.0 for r in calibrations)
        assert any(r.mode == Base.ControlMode.PERFORMANCE and 100.0 <= r.x <= 120.0 for r in calibrations)
        assert all(1.0 <= r.v_cmd <= 2.0 for r in trace)

        rmse = LoopRunner.evaluate_rmse(trace, track, reference_runner.boundaries)
        assert rmse[300.0] < rmse[500.0] < 150.0

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_smooth_track_stays_in_performance(self, reference_runner: LoopRunner, seed: int) -> None:
        trace = reference_runner.run(TrackSpec(segments = ((60.0, 250.0), ), seed = seed), LoopConfig(seed = seed))
        assert len([r for r in trace if r.is_calibration()]) > 5
        assert all(r.mode == Base.ControlMode.PERFORMANCE for r in trace)

class TestRmse:

    def test_grouped_by_segment(self) -> None:
        track = TrackSpec(segments = ((50.0, 300.0), (50.0, 500.0)))
        boundaries = np.array([50.0, 100.0])
        trace = [
            LoopRecord(kind = Base.RecordKind.START, t = 0.0, x = 0.0, v_cmd = 1.5),
            LoopRecord(kind = Base.RecordKind.CALIBRATION, t = 1.0, x = 20.0, v_cmd = 1.5, gd_hat = 310.0, gd_true = 300.0, x_window_start = 8.0),
            LoopRecord(kind = Base.RecordKind.CALIBRATION, t = 2.0, x = 30.0, v_cmd = 1.5, gd_hat = 280.0, gd_true = 300.0, x_window_start = 18.0),
            LoopRecord(kind = Base.RecordKind.CALIBRATION, t = 3.0, x = 55.0, v_cmd = 1.0, gd_hat = 400.0, gd_true = 500.0, x_window_start = 43.0),
            LoopRecord(kind = Base.RecordKind.CALIBRATION, t = 4.0, x = 80.0, v_cmd = 1.0, gd_hat = 480.0, gd_true = 500.0, x_window_start = 68.0),
            LoopRecord(kind = Base.RecordKind.FAILED, t = 5.0, x = 90.0, v_cmd = 1.0, gd_true = 500.0),
        ]

        rmse = LoopRunner.evaluate_rmse(trace, track, boundaries)
        assert rmse[300.0] == pytest.approx(math.sqrt((100.0 + 400.0) / 2.0))
        assert rmse[500.0] == pytest.approx(math.sqrt((10000.0 + 400.0) / 2.0))

        excluded = LoopRunner.evaluate_rmse(trace, track, boundaries, exclude_boundary = True)
        assert excluded[500.0] == pytest.approx(20.0)

    def test_empty_trace(self) -> None:
        assert LoopRunner.evaluate_rmse([], TrackSpec.reference()) == {}

class TestConfig:

    @pytest.mark.parametrize(
        "kwargs",
        [{"buffer_len": 1}, {"trigger_stride": 0}, {"trigger_stride": 2000}, {"delay_samples": -1}, {"v_initial": 0.0}],
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(InvalidArgumentError):
            LoopConfig(**kwargs)

    def test_noise_case_is_coerced(self) -> None:
        assert LoopConfig(noise_case = "B").noise_case == Base.NoiseCase.B
        assert LoopConfig().window_seconds() == pytest.approx(1000.0 / 120.0)
