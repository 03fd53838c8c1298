import dataclasses
from typing import Any

import numpy as np

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(eq = False)
class Posterior():

    samples: np.ndarray                                                         # 保留的 GD 样本
    gd_min: float                                                               # 先验下界
    gd_max: float                                                               # 先验上界
    acceptance_rate: float = 0.0                                                # GD 块接受率
    lambda_samples: np.ndarray | None = None                                    # 观测精度样本
    unimodal: bool = True                                                       # 多峰检测结果
    flags: list[str] = dataclasses.field(default_factory = list)                # 标记

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype = np.float64)
        if self.samples.size == 0:
            raise InvalidArgumentError("a posterior needs at least one sample")
        if np.any(self.samples < self.gd_min) or np.any(self.samples > self.gd_max):
            raise InvalidArgumentError("posterior samples must lie inside the prior box")

    def get_count(self) -> int:
        return int(self.samples.size)

    def mean(self) -> float:
        return float(np.mean(self.samples))

    def std(self) -> float:
        return float(np.std(self.samples))

    def quantiles(self) -> tuple[float, float, float]:
        q = np.quantile(self.samples, (0.025, 0.5, 0.975))
        return float(q[0]), float(q[1]), float(q[2])

    # 先验区间上等宽分箱的样本计数
    def histogram(self, bins: int = 20) -> tuple[np.ndarray, np.ndarray]:
        return np.histogram(self.samples, bins = bins, range = (self.gd_min, self.gd_max))

    def summary(self) -> dict[str, Any]:
        q_low, q_median, q_high = self.quantiles()
        return {
            "gd_hat": self.mean(),
            "gd_std": self.std(),
            "q025": q_low,
            "q500": q_median,
            "q975": q_high,
            "acceptance_rate": self.acceptance_rate,
            "n_samples": self.get_count(),
            "unimodal": self.unimodal,
            "flags": list(self.flags),
        }

    def is_flagged(self, flag: str) -> bool:
        return flag in self.flags

