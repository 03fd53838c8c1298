import math
import threading
try:
    from enum import StrEnum
except ImportError:
    from enum import Enum as _Enum

    class StrEnum(str, _Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np
import scipy.signal
import scipy.special
import scipy.stats

from base.Base import Base
from base.BaseError import CalibrationDegenerateError
from module.Calibrate.McmcConfig import McmcConfig
from module.Calibrate.Observation import Observation
from module.Calibrate.Posterior import Posterior
from module.Emulator.Surrogate import Surrogate
from module.Localizer.Localizer import Localizer

class Calibrator(Base):

    class Flag(StrEnum):

        BOUNDARY_PILEUP = "boundary_pileup"                                 # 样本堆积在先验边界
        MULTIMODAL = "multimodal"                                           # 后验多峰
        ZERO_OBSERVATION = "zero_observation"                               # 观测方差为 0
        OUTSIDE_BOX = "outside_box"                                         # 速度超出训练范围

    # 初始提议步长：GD 为先验宽度的比例，观测精度为对数尺度
    INITIAL_GD_STEP: float = 0.05
    INITIAL_LOG_LAMBDA_STEP: float = 0.5

    # 步长调整系数
    TUNE_FACTOR: float = 1.1

    # 目标接受率区间
    TARGET_ACCEPTANCE: tuple[float, float] = (0.2, 0.5)

    # 边界堆积判定：距边界不超过先验宽度的比例、样本占比阈值
    PILEUP_MARGIN: float = 0.02
    PILEUP_FRACTION: float = 0.25

    # 多峰判定：次峰相对主峰的最小显著度
    PEAK_PROMINENCE: float = 0.1

    def __init__(self) -> None:
        super().__init__()

        # retune_each_call 关闭时沿用首次调好的步长
        self.tuned_steps: tuple[float, float] | None = None
        self.lock = threading.Lock()

    @classmethod
    def log_likelihood(cls, surrogate: Surrogate, obs: Observation, gd: float, log_lambda: float) -> float:
        mu, sigma = surrogate.predict_log(np.atleast_1d(obs.v), np.atleast_1d(gd))
        variance = float(sigma[0]) ** 2 + math.exp(-log_lambda)
        residual = math.log(obs.f_obs) - float(mu[0])
        return -0.5 * (math.log(2.0 * math.pi * variance) + residual ** 2 / variance)

    # Gamma(shape, rate) 先验写在 log λ 上，含 Jacobian
    @classmethod
    def log_lambda_prior(cls, cfg: McmcConfig, log_lambda: float) -> float:
        if abs(log_lambda) > 50.0:
            return -math.inf
        return cfg.lambda_obs_shape * log_lambda - cfg.lambda_obs_rate * math.exp(log_lambda)

    def calibrate(self, surrogate: Surrogate, obs: Observation, cfg: McmcConfig) -> Posterior:
        prior = surrogate.prior
        flags: list[str] = []

        if not (prior.v_min <= obs.v <= prior.v_max):
            flags.append(__class__.Flag.OUTSIDE_BOX)
            self.warning(Localizer.get().calibrate_outside_box.replace("{V}", f"{obs.v:.4f}"))

        # 零方差观测无法取对数，后验退化到先验下界
        if obs.f_obs == 0:
            flags.extend((__class__.Flag.ZERO_OBSERVATION, __class__.Flag.BOUNDARY_PILEUP))
            return Posterior(
                samples = np.full(cfg.retained(), prior.gd_min),
                gd_min = prior.gd_min,
                gd_max = prior.gd_max,
                acceptance_rate = 0.0,
                flags = flags,
            )

        rng = np.random.default_rng(cfg.seed)
        width = prior.gd_max - prior.gd_min

        def log_target(gd: float, log_lambda: float) -> float:
            if not (prior.gd_min <= gd <= prior.gd_max):
                return -math.inf
            lp = __class__.log_lambda_prior(cfg, log_lambda)
            if lp == -math.inf:
                return -math.inf
            return lp + __class__.log_likelihood(surrogate, obs, gd, log_lambda)

        # 从先验中点和观测精度先验均值出发
        state = [
            0.5 * (prior.gd_min + prior.gd_max),
            math.log(cfg.lambda_obs_shape / cfg.lambda_obs_rate),
        ]
        current = log_target(*state)

        def sweep(steps: tuple[float, float]) -> tuple[bool, bool]:
            nonlocal current
            accepted = [False, False]
            for k in range(2):
                proposal = list(state)
                proposal[k] = proposal[k] + steps[k] * rng.standard_normal()
                candidate = log_target(*proposal)
                if math.log(rng.uniform()) < candidate - current:
                    state[k] = proposal[k]
                    current = candidate
                    accepted[k] = True
            return accepted[0], accepted[1]

        with self.lock:
            steps = self.tuned_steps
        if cfg.retune_each_call or steps is None:
            steps = self.tune(sweep, cfg, (__class__.INITIAL_GD_STEP * width, __class__.INITIAL_LOG_LAMBDA_STEP))
            with self.lock:
                self.tuned_steps = steps

        gd_samples = np.empty(cfg.retained())
        lambda_samples = np.empty(cfg.retained())
        accepted_gd = 0
        accepted_lambda = 0
        for i in range(cfg.n_total):
            gd_ok, lambda_ok = sweep(steps)
            accepted_gd = accepted_gd + int(gd_ok)
            accepted_lambda = accepted_lambda + int(lambda_ok)
            if i >= cfg.n_burn:
                gd_samples[i - cfg.n_burn] = state[0]
                lambda_samples[i - cfg.n_burn] = math.exp(state[1])

        if accepted_gd == 0:
            raise CalibrationDegenerateError(f"no GD proposal was accepted in {cfg.n_total} iterations (f_obs = {obs.f_obs:.6g}, v = {obs.v:.4f})")

        posterior = Posterior(
            samples = gd_samples,
            gd_min = prior.gd_min,
            gd_max = prior.gd_max,
            acceptance_rate = accepted_gd / cfg.n_total,
            lambda_samples = lambda_samples,
            flags = flags,
        )
        _, _, summary_flags = __class__.posterior_summary(posterior)
        posterior.unimodal = __class__.Flag.MULTIMODAL not in summary_flags
        posterior.flags = flags + [v for v in summary_flags if v not in flags]

        return posterior

    # 分块调步长，每块丢弃前若干次迭代后统计接受率
    def tune(self, sweep, cfg: McmcConfig, steps: tuple[float, float]) -> tuple[float, float]:
        steps = list(steps)
        blocks, length, discard = cfg.tune_blocks()
        for _ in range(blocks):
            counts = [0, 0]
            for i in range(length):
                accepted = sweep(tuple(steps))
                if i >= discard:
                    counts[0] = counts[0] + int(accepted[0])
                    counts[1] = counts[1] + int(accepted[1])

            measured = max(1, length - discard)
            for k in range(2):
                rate = counts[k] / measured
                if rate < __class__.TARGET_ACCEPTANCE[0]:
                    steps[k] = steps[k] / __class__.TUNE_FACTOR
                elif rate > __class__.TARGET_ACCEPTANCE[1]:
                    steps[k] = steps[k] * __class__.TUNE_FACTOR

        return steps[0], steps[1]

    # 点估计取样本均值，附带边界堆积与多峰标记
    @classmethod
    def posterior_summary(cls, p: Posterior) -> tuple[float, float, list[str]]:
        flags: list[str] = [v for v in p.flags if v not in (__class__.Flag.BOUNDARY_PILEUP, __class__.Flag.MULTIMODAL)]

        margin = __class__.PILEUP_MARGIN * (p.gd_max - p.gd_min)
        near_low = np.count_nonzero(p.samples <= p.gd_min + margin)
        near_high = np.count_nonzero(p.samples >= p.gd_max - margin)
        if max(near_low, near_high) >= __class__.PILEUP_FRACTION * p.samples.size:
            flags.append(__class__.Flag.BOUNDARY_PILEUP)

        if __class__.count_modes(p.samples, p.gd_min, p.gd_max) > 1:
            flags.append(__class__.Flag.MULTIMODAL)

        return p.mean(), p.std(), flags

    # 核密度估计后统计显著峰的个数
    @classmethod
    def count_modes(cls, samples: np.ndarray, lower: float, upper: float) -> int:
        if samples.size < 3 or np.std(samples) <= 1.0e-9 * (upper - lower):
            return 1

        try:
            kde = scipy.stats.gaussian_kde(samples)
        except np.linalg.LinAlgError:
            return 1

        grid = np.linspace(lower, upper, 512)
        density = kde(grid)
        padded = np.concatenate(((0.0, ), density, (0.0, )))
        peaks, _ = scipy.signal.find_peaks(padded, prominence = __class__.PEAK_PROMINENCE * float(np.max(density)))
        return max(1, int(peaks.size))

    # 稠密网格上直接积分先验 × 似然，对观测精度在对数网格上边缘化
    @classmethod
    def grid_posterior(cls, surrogate: Surrogate, obs: Observation, cfg: McmcConfig, n: int = 400, n_lambda: int = 400) -> tuple[np.ndarray, np.ndarray, float]:
        prior = surrogate.prior
        gd = np.linspace(prior.gd_min, prior.gd_max, n)
        mu, sigma = surrogate.predict_log(np.full(n, obs.v), gd)

        if obs.f_obs == 0:
            weights = np.zeros(n)
            weights[0] = 1.0
            return gd, weights, float(gd[0])

        log_lambda = np.linspace(-20.0, 25.0, n_lambda)
        log_prior = cfg.lambda_obs_shape * log_lambda - cfg.lambda_obs_rate * np.exp(log_lambda)

        variance = sigma[:, None] ** 2 + np.exp(-log_lambda)[None, :]
        residual = math.log(obs.f_obs) - mu[:, None]
        log_joint = log_prior[None, :] - 0.5 * (np.log(2.0 * math.pi * variance) + residual ** 2 / variance)

        # 等距网格上求和即可，常数步长在归一化时约去
        log_marginal = scipy.special.logsumexp(log_joint, axis = 1)
        weights = np.exp(log_marginal - np.max(log_marginal))
        weights = weights / np.sum(weights)

        return gd, weights, float(np.sum(gd * weights))