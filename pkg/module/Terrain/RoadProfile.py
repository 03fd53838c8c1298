import dataclasses
import math
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

from base.BaseError import InvalidArgumentError
from base.BaseError import OutOfRangeError
from module.Terrain.RoadSpec import RoadSpec

@dataclasses.dataclass(eq = False)
class RoadProfile():

    heights_m: np.ndarray                                                       # 等间距高程序列 m
    spacing_m: float                                                            # 网格间距 m
    spec: RoadSpec | None = None                                                # 生成参数

    def __post_init__(self) -> None:
        self.heights_m = np.asarray(self.heights_m, dtype = np.float64)

        if self.heights_m.ndim != 1 or self.heights_m.size < 2:
            raise InvalidArgumentError("a profile needs at least 2 samples")
        if not (math.isfinite(self.spacing_m) and self.spacing_m > 0):
            raise InvalidArgumentError("spacing must be positive")
        if not np.all(np.isfinite(self.heights_m)):
            raise InvalidArgumentError("profile heights must be finite")

    @classmethod
    def flat(cls, length_m: float, spacing_m: float = 0.006) -> Self:
        count = math.ceil(length_m / spacing_m - 1e-9) + 1
        return cls(heights_m = np.zeros(count), spacing_m = spacing_m)

    def get_count(self) -> int:
        return int(self.heights_m.size)

    def length(self) -> float:
        return (self.heights_m.size - 1) * self.spacing_m

    def positions(self) -> np.ndarray:
        return np.arange(self.heights_m.size) * self.spacing_m

    # 网格点之间线性插值，网格点处精确
    def height_at(self, x: float) -> float:
        if not (0.0 <= x <= self.length()):
            raise OutOfRangeError(f"x = {x} lies outside [0, {self.length()}]")

        # 浮点误差内落在网格点上时直接取值
        q = x / self.spacing_m
        j = min(int(round(q)), self.heights_m.size - 1)
        if abs(q - j) < 1e-9:
            return float(self.heights_m[j])

        k = min(int(q), self.heights_m.size - 2)
        r = q - k
        return float(self.heights_m[k] + r * (self.heights_m[k + 1] - self.heights_m[k]))

    # 向量版本，区间外取端点值，由调用方负责越界语义
    def heights_at(self, xs: np.ndarray) -> np.ndarray:
        return np.interp(xs, self.positions(), self.heights_m)

    def scaled(self, c: float) -> Self:
        return __class__(heights_m = self.heights_m * c, spacing_m = self.spacing_m, spec = self.spec)