import math

import numpy as np

from base.Base import Base
from base.BaseError import InvalidArgumentError
from module.Design.TrainingSet import TrainingSet
from module.Emulator.EmulatorConfig import EmulatorConfig
from module.Emulator.Surrogate import Surrogate
from module.Emulator.SurrogateHyper import SurrogateHyper
from module.Localizer.Localizer import Localizer
from module.ProgressBar import ProgressBar

class EmulatorTrainer(Base):

    # 初始提议步长（对数空间）
    INITIAL_STEP: float = 0.1

    # 预烧期内每隔多少次迭代调整一次步长
    TUNE_INTERVAL: int = 100

    # 目标接受率区间
    TARGET_ACCEPTANCE: tuple[float, float] = (0.2, 0.5)

    # 进度条刷新间隔
    PROGRESS_INTERVAL: int = 500

    def __init__(self, config: EmulatorConfig) -> None:
        super().__init__()

        self.config = config
        self.shapes = np.array(config.shapes())
        self.rates = np.array(config.rates())

    # 对数参数的先验密度，含 Jacobian 项
    def log_prior(self, theta: np.ndarray) -> float:
        return float(np.sum(self.shapes * theta - self.rates * np.exp(theta)))

    @classmethod
    def prepare(cls, ts: TrainingSet) -> tuple[np.ndarray, np.ndarray, float, float]:
        f = ts.outputs()
        if np.any(f <= 0):
            raise InvalidArgumentError("surrogate training needs strictly positive metric values")

        log_f = np.log(f)
        y_mean = float(np.mean(log_f))
        y_scale = float(np.std(log_f))
        if not math.isfinite(y_scale) or y_scale <= 0:
            y_scale = 1.0

        x = ts.prior.scale(ts.velocities(), ts.gds())
        return x, (log_f - y_mean) / y_scale, y_mean, y_scale

    # 以给定超参数直接构造代理模型
    @classmethod
    def fit(cls, ts: TrainingSet, hyper: SurrogateHyper, nugget_floor: float = 1.0e-8, config_digest: str = "") -> Surrogate:
        x, y, y_mean, y_scale = __class__.prepare(ts)
        noise_case = Base.NoiseCase.B if ts.noise.enabled else Base.NoiseCase.A
        return Surrogate(
            inputs_scaled = x,
            outputs_std = y,
            hyper = hyper,
            y_mean = y_mean,
            y_scale = y_scale,
            prior = ts.prior,
            nugget_floor = nugget_floor,
            config_digest = config_digest,
            noise_case = noise_case,
        )

    # 随机游走 Metropolis，前一半迭代预烧并调步长，点估计取保留样本的均值
    def train(self, ts: TrainingSet, config_digest: str = "") -> Surrogate:
        x, y, _, _ = __class__.prepare(ts)
        floor = self.config.nugget_floor
        rng = np.random.default_rng(self.config.seed)

        def log_posterior(theta: np.ndarray) -> float:
            if not np.all(np.isfinite(theta)) or np.any(np.abs(theta) > 50.0):
                return -math.inf
            return self.log_prior(theta) + Surrogate.marginal_log_likelihood(x, y, SurrogateHyper.from_log(theta), floor)

        theta = np.log(self.shapes / self.rates)
        current = log_posterior(theta)
        step = __class__.INITIAL_STEP
        n_burn = self.config.iters // 2
        retained = []
        accepted_window = 0
        accepted_total = 0

        with ProgressBar(transient = True) as progress:
            pid = progress.new(Localizer.get().emulator_progress, total = self.config.iters)

            for i in range(self.config.iters):
                proposal = theta + step * rng.standard_normal(theta.size)
                candidate = log_posterior(proposal)
                if math.log(rng.uniform()) < candidate - current:
                    theta, current = proposal, candidate
                    accepted_window = accepted_window + 1
                    if i >= n_burn:
                        accepted_total = accepted_total + 1

                if i < n_burn and (i + 1) % __class__.TUNE_INTERVAL == 0:
                    rate = accepted_window / __class__.TUNE_INTERVAL
                    if rate < __class__.TARGET_ACCEPTANCE[0]:
                        step = step / 1.1
                    elif rate > __class__.TARGET_ACCEPTANCE[1]:
                        step = step * 1.1
                    accepted_window = 0
                elif i >= n_burn:
                    retained.append(theta.copy())

                if (i + 1) % __class__.PROGRESS_INTERVAL == 0:
                    progress.update(pid, completed = i + 1)

        samples = np.exp(np.array(retained))
        hyper = SurrogateHyper(*(float(v) for v in np.mean(samples, axis = 0)))
        acceptance = accepted_total / max(1, len(retained))

        self.info(
            Localizer.get().emulator_trained
                .replace("{HYPER}", ", ".join(f"{k} = {v:.4g}" for k, v in hyper.asdict().items()))
                .replace("{RATE}", f"{acceptance:.3f}")
        )

        return __class__.fit(ts, hyper, floor, config_digest)