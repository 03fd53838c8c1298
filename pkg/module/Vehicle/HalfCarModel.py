import math
import threading
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.signal

from base.Base import Base
from base.BaseError import InvalidArgumentError
from base.BaseError import UnstableStepError
from module.Terrain.RoadProfile import RoadProfile
from module.Vehicle.HalfCarParams import HalfCarParams
from module.Vehicle.ImuSeries import ImuSeries
from module.Vehicle.NoiseSpec import NoiseSpec
from module.Vehicle.VehicleState import VehicleState

class HalfCarModel(Base):

    # 任一状态分量超过该幅值即判定发散
    DIVERGENCE_LIMIT: float = 1.0e3

    # 模态分解可用的特征向量矩阵条件数上限
    CONDITION_LIMIT: float = 1.0e8

    # 指令速度范围 m/s
    V_LIMIT: tuple[float, float] = (0.0, 10.0)

    # 谱半径容差
    RADIUS_TOLERANCE: float = 1.0e-9

    def __init__(self, params: HalfCarParams, dt_internal: float = 2.0e-5) -> None:
        super().__init__()

        if not math.isfinite(dt_internal) or dt_internal <= 0:
            raise InvalidArgumentError(f"dt_internal must be positive, got {dt_internal}")

        self.params = params
        self.dt_internal = dt_internal
        self.a, self.b = __class__.build_state_space(params)

        # 按步长缓存的传播矩阵与模态
        self.cache: dict[float, tuple] = {}
        self.lock = threading.Lock()

    # 由势能 ½dᵀKd + ½kt(y-u)² 推出的线性状态方程 ẋ = Ax + Bu
    @classmethod
    def build_state_space(cls, p: HalfCarParams) -> tuple[np.ndarray, np.ndarray]:
        # 悬架变形 d1 = y3 + b1·φ - y1，d2 = y3 - b2·φ - y2
        deflection = np.array(
            (
                (-1.0, 0.0, 1.0, p.b1),
                (0.0, -1.0, 1.0, -p.b2),
            )
        )
        stiffness = deflection.T @ np.diag((p.K1, p.K2)) @ deflection + np.diag((p.kt1, p.kt2, 0.0, 0.0))
        damping = deflection.T @ np.diag((p.C1, p.C2)) @ deflection
        inverse_mass = np.diag(1.0 / np.array((p.m1, p.m2, p.m3, p.I3)))

        a = np.zeros((8, 8))
        a[0:4, 4:8] = np.eye(4)
        a[4:8, 0:4] = -inverse_mass @ stiffness
        a[4:8, 4:8] = -inverse_mass @ damping

        b = np.zeros((8, 2))
        b[4, 0] = p.kt1 / p.m1
        b[5, 1] = p.kt2 / p.m2

        return a, b

    def derivatives(self, state: VehicleState, u1: float, u2: float) -> VehicleState:
        return VehicleState(self.a @ state.values + self.b @ np.array((u1, u2)))

    def front_acceleration(self, state: VehicleState, u1: float, u2: float) -> float:
        return float(self.derivatives(state, u1, u2).values[4])

    # 动能、悬架势能与轮胎势能之和
    def energy(self, state: VehicleState, u1: float, u2: float) -> float:
        p = self.params
        y1, y2, y3, phi = state.values[0:4]
        velocity = state.values[4:8]
        d1 = y3 + p.b1 * phi - y1
        d2 = y3 - p.b2 * phi - y2
        kinetic = 0.5 * float(np.sum(np.array((p.m1, p.m2, p.m3, p.I3)) * velocity ** 2))
        potential = 0.5 * (p.K1 * d1 ** 2 + p.K2 * d2 ** 2 + p.kt1 * (y1 - u1) ** 2 + p.kt2 * (y2 - u2) ** 2)
        return kinetic + potential

    # 单步 RK4，u0/uh/u1 为步首、步中、步末的路面输入
    def rk4_step(self, x: np.ndarray, u0: np.ndarray, uh: np.ndarray, u1: np.ndarray, h: float) -> np.ndarray:
        k1 = self.a @ x + self.b @ u0
        k2 = self.a @ (x + 0.5 * h * k1) + self.b @ uh
        k3 = self.a @ (x + 0.5 * h * k2) + self.b @ uh
        k4 = self.a @ (x + h * k3) + self.b @ u1
        return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    # 按行批量的 RK4 单步，每行步长可以不同
    def rk4_batch(self, x: np.ndarray, u0: np.ndarray, uh: np.ndarray, u1: np.ndarray, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype = np.float64)[:, None]
        k1 = x @ self.a.T + u0 @ self.b.T
        k2 = (x + 0.5 * h * k1) @ self.a.T + uh @ self.b.T
        k3 = (x + 0.5 * h * k2) @ self.a.T + uh @ self.b.T
        k4 = (x + h * k3) @ self.a.T + u1 @ self.b.T
        return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    # 线性系统上 RK4 单步可写为 x' = Φx + G0·u0 + Gh·uh + G1·u1
    def propagator(self, h: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        with self.lock:
            if h not in self.cache:
                self.cache[h] = self.build_propagator(h)
            return self.cache[h][0:4]

    def build_propagator(self, h: float) -> tuple:
        zero_x = np.zeros(8)
        zero_u = np.zeros(2)
        eye_x = np.eye(8)
        eye_u = np.eye(2)

        phi = np.column_stack([self.rk4_step(eye_x[i], zero_u, zero_u, zero_u, h) for i in range(8)])
        g0 = np.column_stack([self.rk4_step(zero_x, eye_u[j], zero_u, zero_u, h) for j in range(2)])
        gh = np.column_stack([self.rk4_step(zero_x, zero_u, eye_u[j], zero_u, h) for j in range(2)])
        g1 = np.column_stack([self.rk4_step(zero_x, zero_u, zero_u, eye_u[j], h) for j in range(2)])

        # 模态分解，特征向量病态时退回逐步递推
        eigenvalues, eigenvectors = scipy.linalg.eig(phi)
        modes = None
        if np.linalg.cond(eigenvectors) < __class__.CONDITION_LIMIT:
            modes = (eigenvalues, eigenvectors, np.linalg.inv(eigenvectors))

        return phi, g0, gh, g1, modes

    def spectral_radius(self, h: float) -> float:
        phi = self.propagator(h)[0]
        return float(np.max(np.abs(np.linalg.eigvals(phi))))

    # 无阻尼振荡下 RK4 的稳定边界 h·ω ≤ 2√2
    def stability_bound(self) -> float:
        omega_max = float(np.max(np.abs(np.linalg.eigvals(self.a))))
        if omega_max == 0:
            return math.inf
        return 2.0 * math.sqrt(2.0) / omega_max

    def check_step(self, h: float) -> None:
        if self.spectral_radius(h) > 1.0 + __class__.RADIUS_TOLERANCE:
            bound = self.stability_bound()
            raise UnstableStepError(
                f"dt_internal = {h:.3e} s is above the stability bound, use dt ≤ {bound:.3e} s",
                suggested_dt = bound,
            )

    # 给定每步的强迫项 g_k，返回 x_1 … x_n
    def propagate(self, h: float, x0: np.ndarray, forcing: np.ndarray) -> np.ndarray:
        with self.lock:
            if h not in self.cache:
                self.cache[h] = self.build_propagator(h)
            phi, _, _, _, modes = self.cache[h]

        if modes is None:
            states = np.empty_like(forcing)
            x = np.asarray(x0, dtype = np.float64)
            for k in range(forcing.shape[0]):
                x = phi @ x + forcing[k]
                states[k] = x
            return states

        # 各模态为一阶递推 z' = λz + w，用 lfilter 批量求解
        eigenvalues, eigenvectors, inverse = modes
        w = forcing @ inverse.T
        z0 = inverse @ x0
        z = np.empty(w.shape, dtype = np.complex128)
        for i, lam in enumerate(eigenvalues):
            z[:, i], _ = scipy.signal.lfilter((1.0,), (1.0, -lam), w[:, i], zi = (lam * z0[i],))

        return np.real(z @ eigenvectors.T)

    # 冻结路面输入时从 state 出发推进 n_steps 步
    def run_frozen(self, state: VehicleState, u1: float, u2: float, n_steps: int, h: float = None) -> np.ndarray:
        h = self.dt_internal if h is None else h
        self.check_step(h)
        _, g0, gh, g1 = self.propagator(h)
        u = np.array((u1, u2))
        forcing = np.tile((g0 + gh + g1) @ u, (n_steps, 1))
        return self.propagate(h, state.values, forcing)

    def simulate(
        self,
        profile: RoadProfile,
        v: float | Sequence[tuple[float, float]],
        sample_rate_hz: float,
        noise: NoiseSpec = None,
        initial_state: VehicleState = None,
    ) -> ImuSeries:
        from module.Vehicle.VehicleStream import VehicleStream

        noise = NoiseSpec.disabled() if noise is None else noise
        stream = VehicleStream(
            model = self,
            profile = profile,
            sample_rate_hz = sample_rate_hz,
            noise = NoiseSpec.disabled(),
            initial_state = initial_state,
        )

        velocities = stream.schedule_velocities(v)
        positions, a_clean = stream.advance(velocities)

        # 噪声按 noise.seed 整段抽取
        a_front = a_clean.copy()
        if noise.enabled:
            a_front = a_clean + np.random.default_rng(noise.seed).normal(0.0, noise.sigma, a_clean.size)

        return ImuSeries(
            sample_rate_hz = sample_rate_hz,
            a_front = a_front,
            v_commanded = velocities,
            positions_m = positions,
            a_clean = a_clean,
        )

    @classmethod
    def check_velocity(cls, v: float) -> None:
        if not math.isfinite(v) or not (__class__.V_LIMIT[0] < v <= __class__.V_LIMIT[1]):
            raise InvalidArgumentError(f"velocity must lie in (0, 10] m/s, got {v}")

    @classmethod
    def signal_to_noise_db(cls, a_clean: np.ndarray, sigma: float) -> float:
        power = float(np.var(a_clean))
        if sigma <= 0:
            return math.inf
        if power <= 0:
            return -math.inf
        return 10.0 * math.log10(power / sigma ** 2)

