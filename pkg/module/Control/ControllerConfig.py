import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.Base import Base
from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class ControllerConfig():

    gd_min: float = 250.0                                                       # 性能区间下界
    gd_max: float = 350.0                                                       # 性能区间上界，超过即进入安全模式
    kp: float = 0.01                                                            # 比例系数 m/s 每 GD
    v_safety: float = 1.0                                                       # 安全模式速度 m/s
    v_max: float = 2.0                                                          # 最大允许速度 m/s
    v_offset: float = 1.5                                                       # 区间中点对应速度 m/s
    law: Base.ControlLaw = Base.ControlLaw.AFFINE                               # 性能模式控制律
    reentry_margin: float = 0.0                                                 # 滞回裕量

    def __post_init__(self) -> None:
        values = (self.gd_min, self.gd_max, self.kp, self.v_safety, self.v_max, self.v_offset, self.reentry_margin)
        if any(not math.isfinite(v) for v in values):
            raise InvalidArgumentError("controller parameters must be finite")
        if not self.gd_min < self.gd_max:
            raise InvalidArgumentError(f"controller needs gd_min < gd_max, got [{self.gd_min}, {self.gd_max}]")
        if not (self.v_safety <= self.v_offset <= self.v_max):
            raise InvalidArgumentError("controller needs v_safety <= v_offset <= v_max")
        if self.kp <= 0:
            raise InvalidArgumentError("kp must be positive")
        if self.reentry_margin < 0:
            raise InvalidArgumentError("reentry margin must be non-negative")

        object.__setattr__(self, "law", Base.ControlLaw(self.law))

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def midpoint(self) -> float:
        return 0.5 * (self.gd_min + self.gd_max)
