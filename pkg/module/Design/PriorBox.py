import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

from base.BaseError import InvalidArgumentError
from module.Prior.UniformPrior import UniformPrior

@dataclasses.dataclass(frozen = True)
class PriorBox():

    v_min: float = 0.5                                                          # 速度下界 m/s
    v_max: float = 2.0                                                          # 速度上界 m/s
    gd_min: float = 200.0                                                       # GD 下界
    gd_max: float = 600.0                                                       # GD 上界

    def __post_init__(self) -> None:
        values = (self.v_min, self.v_max, self.gd_min, self.gd_max)
        if any(not math.isfinite(v) for v in values):
            raise InvalidArgumentError("prior box bounds must be finite")
        if not (0 < self.v_min < self.v_max):
            raise InvalidArgumentError(f"prior box needs 0 < v_min < v_max, got [{self.v_min}, {self.v_max}]")
        if not (0 < self.gd_min < self.gd_max):
            raise InvalidArgumentError(f"prior box needs 0 < gd_min < gd_max, got [{self.gd_min}, {self.gd_max}]")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: float(v) for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def velocity(self) -> UniformPrior:
        return UniformPrior.velocity(self.v_min, self.v_max)

    def gd(self) -> UniformPrior:
        return UniformPrior.gd(self.gd_min, self.gd_max)

    def contains(self, v: float, gd: float) -> bool:
        return self.v_min <= v <= self.v_max and self.gd_min <= gd <= self.gd_max

    # 映射到单位正方形
    def scale(self, v: Any, gd: Any) -> np.ndarray:
        v = (np.asarray(v, dtype = np.float64) - self.v_min) / (self.v_max - self.v_min)
        gd = (np.asarray(gd, dtype = np.float64) - self.gd_min) / (self.gd_max - self.gd_min)
        return np.column_stack((np.atleast_1d(v), np.atleast_1d(gd)))
