import math
from typing import Sequence

import numpy as np

from base.Base import Base
from base.BaseError import IntegrationDivergedError
from base.BaseError import InvalidArgumentError
from module.Terrain.RoadProfile import RoadProfile
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.NoiseSpec import NoiseSpec
from module.Vehicle.VehicleState import VehicleState

# 逐采样区间推进的有状态仿真，闭环与离线仿真共用
class VehicleStream(Base):

    # 每批处理的采样区间数
    BLOCK_SAMPLES: int = 256

    def __init__(
        self,
        model: HalfCarModel,
        profile: RoadProfile,
        sample_rate_hz: float,
        noise: NoiseSpec = None,
        initial_state: VehicleState = None,
    ) -> None:
        super().__init__()

        if not math.isfinite(sample_rate_hz) or sample_rate_hz <= 0:
            raise InvalidArgumentError(f"sample rate must be positive, got {sample_rate_hz}")
        if profile.length() <= model.params.wheelbase():
            raise InvalidArgumentError(
                f"profile length {profile.length():.3f} m does not exceed the wheelbase {model.params.wheelbase():.3f} m"
            )

        self.model = model
        self.profile = profile
        self.sample_rate_hz = sample_rate_hz
        self.noise = NoiseSpec.disabled() if noise is None else noise

        # 每个采样区间等分为整数个子步，采样时刻恰好落在积分网格上
        self.sample_period = 1.0 / sample_rate_hz
        self.substeps = max(1, math.ceil(self.sample_period / model.dt_internal - 1e-9))
        self.h = self.sample_period / self.substeps
        model.check_step(self.h)

        # 后轮驶入前取剖面起点高程，整车处于静平衡
        if initial_state is None:
            initial_state = VehicleState.level(float(profile.heights_m[0]))
        if not initial_state.is_finite():
            raise InvalidArgumentError("initial state must be finite")

        self.state = initial_state.copy()
        self.x = 0.0
        self.sample_index = 0
        self.rng = np.random.default_rng(self.noise.seed) if self.noise.enabled else None

    # 把常速或 (起始时间, 速度) 分段指令展开为逐采样区间速度，直到前轮到达剖面末端
    def schedule_velocities(self, v: float | Sequence[tuple[float, float]]) -> np.ndarray:
        if isinstance(v, (int, float)):
            HalfCarModel.check_velocity(float(v))
            count = self.remaining_samples(float(v))
            return np.full(count, float(v))

        breakpoints = sorted((float(t), float(value)) for t, value in v)
        if len(breakpoints) == 0 or breakpoints[0][0] > 0:
            raise InvalidArgumentError("a velocity schedule must start at t = 0")
        for _, value in breakpoints:
            HalfCarModel.check_velocity(value)

        times = np.array([t for t, _ in breakpoints])
        values = np.array([value for _, value in breakpoints])

        velocities = []
        x = self.x
        limit = self.profile.length() + 1e-9
        j = self.sample_index
        while True:
            t = j * self.sample_period
            value = float(values[np.searchsorted(times, t + 1e-12, side = "right") - 1])
            if x + value * self.sample_period > limit:
                break
            velocities.append(value)
            x = x + value * self.sample_period
            j = j + 1

        return np.array(velocities, dtype = np.float64)

    def remaining_samples(self, v: float) -> int:
        return max(0, math.floor((self.profile.length() - self.x) / (v * self.sample_period) + 1e-9))

    # 推进 len(velocities) 个采样区间，返回采样时刻前轮位置与前轴加速度
    def advance(self, velocities: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        velocities = np.asarray(velocities, dtype = np.float64)
        positions = np.empty(velocities.size)
        accelerations = np.empty(velocities.size)

        for start in range(0, velocities.size, __class__.BLOCK_SAMPLES):
            block = velocities[start : start + __class__.BLOCK_SAMPLES]
            x_end, a_block = self.advance_block(block)
            positions[start : start + block.size] = x_end
            accelerations[start : start + block.size] = a_block

        if self.rng is not None and velocities.size > 0:
            accelerations = accelerations + self.rng.normal(0.0, self.noise.sigma, velocities.size)

        return positions, accelerations

    def advance_block(self, velocities: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m = self.substeps
        h = self.h
        wheelbase = self.model.params.wheelbase()
        _, g0, gh, g1 = self.model.propagator(h)

        x_start = self.x + np.concatenate(((0.0, ), np.cumsum(velocities * self.sample_period)[:-1]))
        x_end = x_start + velocities * self.sample_period

        # 子步起点、中点、终点的前轮位置
        offsets = np.arange(m) * h
        x0 = (x_start[:, None] + velocities[:, None] * offsets[None, :]).ravel()
        speed = np.repeat(velocities, m)
        xh = x0 + 0.5 * speed * h
        x1 = x0 + speed * h

        forcing = (
            self.road_inputs(x0, wheelbase) @ g0.T
            + self.road_inputs(xh, wheelbase) @ gh.T
            + self.road_inputs(x1, wheelbase) @ g1.T
        )
        kinked, kinked_forcing = self.kink_forcing(x0, x1, speed, wheelbase)
        forcing[kinked] = kinked_forcing

        states = self.model.propagate(h, self.state.values, forcing)

        magnitude = np.max(np.abs(states), axis = 1)
        bad = np.flatnonzero(~(magnitude <= HalfCarModel.DIVERGENCE_LIMIT))
        if bad.size > 0:
            step = self.sample_index * m + int(bad[0]) + 1
            raise IntegrationDivergedError(f"integration diverged at internal step {step}", step = step)

        ends = states[m - 1 :: m]
        u_end = self.road_inputs(x_end, wheelbase)
        accelerations = (ends @ self.model.a.T + u_end @ self.model.b.T)[:, 4]

        self.state = VehicleState(ends[-1])
        self.x = float(x_end[-1])
        self.sample_index = self.sample_index + velocities.size

        return x_end, accelerations

    # 剖面在网格点处斜率突变，子步内有车轮越过网格点时在折点处拆开逐段做 RK4
    # 返回这些子步的序号与以零初值推进得到的强迫项
    def kink_forcing(self, x0: np.ndarray, x1: np.ndarray, speed: np.ndarray, wheelbase: float) -> tuple[np.ndarray, np.ndarray]:
        spacing = self.profile.spacing_m
        last = self.profile.get_count() - 1

        rows_list: list[np.ndarray] = []
        tau_list: list[np.ndarray] = []
        for offset in (0.0, wheelbase):
            # 严格落在 (x0, x1) 内的网格点编号，后轮驶入处的 0 号点同样是折点
            lo = np.maximum(np.floor((x0 - offset) / spacing).astype(np.int64) + 1, 0)
            hi = np.minimum(np.ceil((x1 - offset) / spacing).astype(np.int64) - 1, last)
            counts = np.maximum(hi - lo + 1, 0)
            total = int(np.sum(counts))
            if total == 0:
                continue

            rows = np.repeat(np.arange(x0.size), counts)
            nodes = np.repeat(lo, counts) + np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
            rows_list.append(rows)
            tau_list.append((offset + nodes * spacing - x0[rows]) / speed[rows])

        if len(rows_list) == 0:
            return np.zeros(0, dtype = np.int64), np.zeros((0, 8))

        rows = np.concatenate(rows_list)
        tau = np.clip(np.concatenate(tau_list), 0.0, self.h)
        order = np.lexsort((tau, rows))
        rows, tau = rows[order], tau[order]
        kinked, first, counts = np.unique(rows, return_index = True, return_counts = True)

        # 第 r 段从上一折点推进到第 r 个折点，最后一段推进到子步末端，段内输入严格线性
        forcing = np.zeros((kinked.size, 8))
        start = np.zeros(kinked.size)
        base = x0[kinked]
        v = speed[kinked]
        for r in range(int(np.max(counts)) + 1):
            end = np.where(counts > r, tau[first + np.minimum(r, counts - 1)], self.h)
            length = end - start
            forcing = self.model.rk4_batch(
                forcing,
                self.road_inputs(base + v * start, wheelbase),
                self.road_inputs(base + v * (start + 0.5 * length), wheelbase),
                self.road_inputs(base + v * end, wheelbase),
                length,
            )
            start = end

        return kinked, forcing

    # 前轮取 x 处高程，后轮滞后一个轴距，驶入前保持起点高程
    def road_inputs(self, x: np.ndarray, wheelbase: float) -> np.ndarray:
        return np.column_stack((self.profile.heights_at(x), self.profile.heights_at(x - wheelbase)))

    def time_s(self) -> float:
        return self.sample_index * self.sample_period