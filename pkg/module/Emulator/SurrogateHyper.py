import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class SurrogateHyper():

    beta_v: float = 2.0                                                         # 速度维逆平方相关长度
    beta_gd: float = 2.0                                                        # GD 维逆平方相关长度
    lambda_z: float = 1.0                                                       # 边缘精度
    lambda_n: float = 1000.0                                                    # 块金精度

    def __post_init__(self) -> None:
        # lambda_n 可取 inf，此时块金只剩数值下限
        values = self.as_array()
        if not np.all(np.isfinite(values[0:3])) or math.isnan(self.lambda_n):
            raise InvalidArgumentError("surrogate hyperparameters must be finite")
        if self.beta_v < 0 or self.beta_gd < 0:
            raise InvalidArgumentError("correlation parameters must be non-negative")
        if self.lambda_z <= 0 or self.lambda_n <= 0:
            raise InvalidArgumentError("precisions must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: float(v) for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    # 对数参数化，MCMC 在该空间中游走
    @classmethod
    def from_log(cls, theta: np.ndarray) -> Self:
        values = np.exp(np.asarray(theta, dtype = np.float64))
        return cls(*(float(v) for v in values))

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def as_array(self) -> np.ndarray:
        return np.array((self.beta_v, self.beta_gd, self.lambda_z, self.lambda_n), dtype = np.float64)

    def to_log(self) -> np.ndarray:
        return np.log(self.as_array())

    def betas(self) -> np.ndarray:
        return np.array((self.beta_v, self.beta_gd))

    def nugget(self, floor: float) -> float:
        return 1.0 / self.lambda_n + floor

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.as_array())
