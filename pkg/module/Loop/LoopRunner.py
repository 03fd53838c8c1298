import math

import numpy as np

from base.Base import Base
from base.BaseError import CalibrationDegenerateError
from base.BaseError import InsufficientTrackError
from module.Calibrate.Calibrator import Calibrator
from module.Calibrate.McmcConfig import McmcConfig
from module.Calibrate.Observation import Observation
from module.Control.ControllerConfig import ControllerConfig
from module.Control.ControllerState import ControllerState
from module.Control.SimplexController import SimplexController
from module.Design.DesignBuilder import DesignBuilder
from module.Emulator.Surrogate import Surrogate
from module.Localizer.Localizer import Localizer
from module.Loop.LoopConfig import LoopConfig
from module.Loop.LoopRecord import LoopRecord
from module.Loop.TrackSpec import TrackSpec
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.ImuSeries import ImuSeries
from module.Vehicle.NoiseSpec import NoiseSpec
from module.Vehicle.VehicleStream import VehicleStream

# 闭环：缓冲区满后每隔 trigger_stride 个样本标定一次并更新速度指令
class LoopRunner(Base):

    def __init__(
        self,
        model: HalfCarModel,
        surrogate: Surrogate,
        mcmc: McmcConfig,
        control: ControllerConfig,
        noise: NoiseSpec = None,
    ) -> None:
        super().__init__()

        self.model = model
        self.surrogate = surrogate
        self.mcmc = mcmc
        self.control = control
        self.noise = NoiseSpec() if noise is None else noise
        self.calibrator = Calibrator()

        # 最近一次运行的完整 IMU 流
        self.imu: ImuSeries | None = None
        self.boundaries: np.ndarray | None = None

    @classmethod
    def derive_seed(cls, *keys: int) -> int:
        return int(np.random.SeedSequence(keys).generate_state(1)[0])

    def get_imu(self) -> ImuSeries | None:
        return self.imu

    def stream_noise(self, cfg: LoopConfig) -> NoiseSpec:
        if cfg.noise_case == Base.NoiseCase.B:
            return NoiseSpec(enabled = True, sigma = self.noise.sigma, seed = __class__.derive_seed(cfg.seed, 0))
        else:
            return NoiseSpec.disabled()

    def run(self, track: TrackSpec, cfg: LoopConfig) -> list[LoopRecord]:
        profile, boundaries = track.build()
        self.boundaries = boundaries

        if cfg.window_seconds() * self.control.v_max > profile.length():
            raise InsufficientTrackError(
                f"track length {profile.length():.2f} m is shorter than one buffer at maximum speed "
                f"({cfg.window_seconds() * self.control.v_max:.2f} m)"
            )

        if self.surrogate.noise_case not in ("", cfg.noise_case):
            self.warning(
                Localizer.get().loop_case_mismatch
                    .replace("{SURROGATE}", str(self.surrogate.noise_case))
                    .replace("{CASE}", str(cfg.noise_case))
            )

        stream = VehicleStream(
            model = self.model,
            profile = profile,
            sample_rate_hz = cfg.sample_rate_hz,
            noise = self.stream_noise(cfg),
        )

        # 行依次为加速度、速度指令、位置，按整条路面的最低速度预估容量
        samples = np.empty((3, __class__.estimate_capacity(profile.length(), min(cfg.v_initial, self.control.v_safety), cfg)))
        count = 0

        v_current = cfg.v_initial
        state = ControllerState(mode = Base.ControlMode.PERFORMANCE, last_v_cmd = v_current)
        pending: list[tuple[int, float]] = []
        next_trigger = cfg.buffer_len
        event = 0

        records = [
            LoopRecord(
                kind = Base.RecordKind.START,
                t = 0.0,
                x = 0.0,
                v_cmd = v_current,
                mode = state.mode,
                gd_true = track.gd_at(0.0, boundaries),
            )
        ]

        while True:
            # 下一个事件：标定触发或延迟指令生效
            target = min([next_trigger] + [j for j, _ in pending])
            available = stream.remaining_samples(v_current)
            n = min(target - count, available)
            if n > 0:
                velocities = np.full(n, v_current)
                positions, accelerations = stream.advance(velocities)
                samples = __class__.reserve(samples, count + n)
                samples[:, count:count + n] = (accelerations, velocities, positions)
                count = count + n

            if count < target:
                break

            # 到期的延迟指令
            for j, v in [p for p in pending if p[0] == count]:
                v_current = v
            pending = [p for p in pending if p[0] != count]

            if count == next_trigger:
                start = count - cfg.buffer_len
                a, v, x = samples[:, start:count]
                record, state, v_cmd = self.calibrate_window(
                    cfg = cfg,
                    track = track,
                    state = state,
                    event = event,
                    a = a,
                    v = v,
                    x = x,
                    start = start,
                    count = count,
                    v_current = v_current,
                )
                records.append(record)

                if cfg.delay_samples == 0:
                    v_current = v_cmd
                else:
                    pending.append((count + cfg.delay_samples, v_cmd))

                next_trigger = next_trigger + cfg.trigger_stride
                event = event + 1

        a, v, x = samples[:, :count].copy()
        self.imu = ImuSeries(sample_rate_hz = cfg.sample_rate_hz, a_front = a, v_commanded = v, positions_m = x)

        x_end = float(x[-1]) if x.size > 0 else 0.0
        last = records[-1]
        records.append(
            LoopRecord(
                kind = Base.RecordKind.END,
                t = count / cfg.sample_rate_hz,
                x = x_end,
                v_cmd = v_current,
                gd_hat = last.gd_hat,
                gd_std = last.gd_std,
                mode = state.mode,
                f_obs = last.f_obs,
                gd_true = track.gd_at(x_end, boundaries),
            )
        )

        return records

    @classmethod
    def estimate_capacity(cls, length_m: float, v_min: float, cfg: LoopConfig) -> int:
        return max(cfg.buffer_len, int(math.ceil(length_m / v_min * cfg.sample_rate_hz)) + 1)

    # 容量不足时至少倍增，已写入的样本原样保留
    @classmethod
    def reserve(cls, samples: np.ndarray, size: int) -> np.ndarray:
        if size <= samples.shape[1]:
            return samples

        grown = np.empty((samples.shape[0], max(size, 2 * samples.shape[1])))
        grown[:, :samples.shape[1]] = samples
        return grown

    def calibrate_window(
        self,
        cfg: LoopConfig,
        track: TrackSpec,
        state: ControllerState,
        event: int,
        a: np.ndarray,
        v: np.ndarray,
        x: np.ndarray,
        start: int,
        count: int,
        v_current: float,
    ) -> tuple[LoopRecord, ControllerState, float]:
        t = count / cfg.sample_rate_hz
        x_now = float(x[-1])
        f_obs = DesignBuilder.metric_f(a)
        obs = Observation(f_obs = f_obs, v = float(np.mean(v)), n_samples = a.size)
        common = {
            "t": t,
            "x": x_now,
            "f_obs": f_obs,
            "gd_true": track.gd_at(x_now, self.boundaries),
            "window_start": start,
            "window_end": count,
            "x_window_start": float(x[0]),
        }

        try:
            posterior = self.calibrator.calibrate(self.surrogate, obs, self.mcmc.with_seed(__class__.derive_seed(cfg.seed, 1, event)))
        except CalibrationDegenerateError as e:
            self.warning(Localizer.get().loop_calibration_fail.replace("{T}", f"{t:.2f}").replace("{X}", f"{x_now:.2f}"), e)
            record = LoopRecord(kind = Base.RecordKind.FAILED, v_cmd = state.last_v_cmd if math.isfinite(state.last_v_cmd) else v_current, mode = state.mode, **common)
            return record, state, record.v_cmd

        gd_hat, gd_std, _ = Calibrator.posterior_summary(posterior)
        v_cmd, new_state = SimplexController.step_h(self.control, state, gd_hat)

        if new_state.mode != state.mode:
            self.info(
                Localizer.get().loop_mode_switch
                    .replace("{T}", f"{t:.2f}")
                    .replace("{X}", f"{x_now:.2f}")
                    .replace("{GD}", f"{gd_hat:.1f}")
                    .replace("{MODE}", str(new_state.mode))
                    .replace("{V}", f"{v_cmd:.3f}")
            )

        record = LoopRecord(
            kind = Base.RecordKind.CALIBRATION,
            v_cmd = v_cmd,
            gd_hat = gd_hat,
            gd_std = gd_std,
            mode = new_state.mode,
            **common,
        )
        return record, new_state, v_cmd

    # 按设定 GD 分组的均方根误差，可剔除跨越分段边界的窗口
    @classmethod
    def evaluate_rmse(cls, trace: list[LoopRecord], track: TrackSpec, boundaries: np.ndarray = None, exclude_boundary: bool = False) -> dict[float, float]:
        if len(trace) == 0:
            return {}

        if boundaries is None:
            boundaries = np.cumsum([length for length, _ in track.segments])
        interior = boundaries[:-1]

        errors: dict[float, list[float]] = {}
        for record in trace:
            if not record.is_calibration():
                continue
            if exclude_boundary and np.any((interior > record.x_window_start) & (interior <= record.x)):
                continue
            errors.setdefault(record.gd_true, []).append((record.gd_hat - record.gd_true) ** 2)

        return {gd: math.sqrt(sum(v) / len(v)) for gd, v in sorted(errors.items())}