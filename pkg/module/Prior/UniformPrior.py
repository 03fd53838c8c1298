import dataclasses
import math
try:
    from enum import StrEnum
except ImportError:
    from enum import Enum as _Enum

    class StrEnum(str, _Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class UniformPrior():

    class Dimension(StrEnum):

        VELOCITY = "VELOCITY"                      # 速度 m/s
        GD = "GD"                                  # 粗糙度 GD

    lower: float = 0.0                                                          # 下界
    upper: float = 1.0                                                          # 上界
    dimension: Dimension = Dimension.GD                                         # 维度标签

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)) or self.lower >= self.upper:
            raise InvalidArgumentError(f"uniform prior needs lower < upper, got [{self.lower}, {self.upper}]")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in class_fields})

    @classmethod
    def gd(cls, lower: float = 200.0, upper: float = 600.0) -> Self:
        return cls(lower = lower, upper = upper, dimension = cls.Dimension.GD)

    @classmethod
    def velocity(cls, lower: float = 0.5, upper: float = 2.0) -> Self:
        return cls(lower = lower, upper = upper, dimension = cls.Dimension.VELOCITY)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    # 概率密度，支撑集外为 0
    def density(self, x: float) -> float:
        return 1.0 / self.width() if self.contains(x) else 0.0

    def log_density(self, x: float) -> float:
        return -math.log(self.width()) if self.contains(x) else -math.inf

    # 独立同分布抽样，给定种子结果确定
    def sample(self, seed: int, n: int) -> np.ndarray:
        if n < 1:
            raise InvalidArgumentError(f"sample count must be >= 1, got {n}")

        rng = np.random.default_rng(seed)
        return rng.uniform(self.lower, self.upper, size = n)