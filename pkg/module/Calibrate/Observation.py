import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class Observation():

    f_obs: float                                                                # 观测到的加速度方差 (m/s²)²
    v: float                                                                    # 已知速度 m/s
    n_samples: int = 1000                                                       # 缓冲区长度 T

    def __post_init__(self) -> None:
        if not math.isfinite(self.f_obs) or self.f_obs < 0:
            raise InvalidArgumentError(f"f_obs must be finite and non-negative, got {self.f_obs}")
        if not math.isfinite(self.v) or self.v <= 0:
            raise InvalidArgumentError(f"v must be positive, got {self.v}")
        if self.n_samples < 2:
            raise InvalidArgumentError(f"an observation needs at least 2 samples, got {self.n_samples}")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)
