import dataclasses
import math
from typing import Any
from typing import ClassVar

import numpy as np

from base.BaseError import InsufficientDataError
from base.BaseError import InvalidArgumentError
from module.Design.DesignPoint import DesignPoint
from module.Design.PriorBox import PriorBox
from module.Vehicle.NoiseSpec import NoiseSpec

@dataclasses.dataclass(eq = False)
class TrainingSet():

    # 训练集最少点数
    MIN_POINTS: ClassVar[int] = 10

    points: list[DesignPoint]                                                   # 已仿真的设计点
    prior: PriorBox                                                             # 先验范围
    noise: NoiseSpec                                                            # 生成时的噪声设置
    provenance: dict[str, Any] = dataclasses.field(default_factory = dict)      # 车辆参数与路面参数摘要

    def __post_init__(self) -> None:
        if len(self.points) < self.MIN_POINTS:
            raise InsufficientDataError(f"a training set needs at least {self.MIN_POINTS} points, got {len(self.points)}")

        for point in self.points:
            if point.f is None or not math.isfinite(point.f) or point.f < 0:
                raise InvalidArgumentError(f"design point {point.index} has no valid metric value")
            if not self.prior.contains(point.v, point.gd):
                raise InvalidArgumentError(f"design point {point.index} lies outside the prior box")

        self.points = sorted(self.points, key = lambda p: p.index)

    def get_count(self) -> int:
        return len(self.points)

    def velocities(self) -> np.ndarray:
        return np.array([p.v for p in self.points])

    def gds(self) -> np.ndarray:
        return np.array([p.gd for p in self.points])

    def outputs(self) -> np.ndarray:
        return np.array([p.f for p in self.points])

    def metadata(self) -> dict[str, Any]:
        return {
            "prior": self.prior.asdict(),
            "noise": self.noise.asdict(),
            "provenance": dict(self.provenance),
        }
