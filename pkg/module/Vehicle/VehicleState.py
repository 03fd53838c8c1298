import dataclasses
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

@dataclasses.dataclass(eq = False)
class VehicleState():

    # 状态向量顺序：y1 y2 y3 φ3 ẏ1 ẏ2 ẏ3 φ̇3
    values: np.ndarray = dataclasses.field(default_factory = lambda: np.zeros(8))

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype = np.float64).reshape(8)

    @classmethod
    def zeros(cls) -> Self:
        return cls(np.zeros(8))

    # 整车随路面整体平移的静平衡位置
    @classmethod
    def level(cls, height: float) -> Self:
        values = np.zeros(8)
        values[0:3] = height
        return cls(values)

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        keys = ("y1", "y2", "y3", "phi3", "y1_dot", "y2_dot", "y3_dot", "phi3_dot")
        return cls(np.array([float(data.get(k, 0.0)) for k in keys]))

    def copy(self) -> Self:
        return __class__(self.values.copy())

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    @property
    def y1(self) -> float:
        return float(self.values[0])

    @property
    def y2(self) -> float:
        return float(self.values[1])

    @property
    def y3(self) -> float:
        return float(self.values[2])

    @property
    def phi3(self) -> float:
        return float(self.values[3])

    @property
    def y1_dot(self) -> float:
        return float(self.values[4])

    @property
    def y2_dot(self) -> float:
        return float(self.values[5])

    @property
    def y3_dot(self) -> float:
        return float(self.values[6])

    @property
    def phi3_dot(self) -> float:
        return float(self.values[7])