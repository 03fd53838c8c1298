import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class HalfCarParams():

    m1: float = 1.5                                                             # 前轴非簧载质量 kg
    m2: float = 1.5                                                             # 后轴非簧载质量 kg
    m3: float = 17.0                                                            # 簧载质量 kg
    I3: float = 0.4                                                             # 俯仰转动惯量 kg·m²
    # 默认悬架带阻尼，刚性车轴参数见 rigid_axle_defaults
    K1: float = 4000.0                                                          # 前悬架刚度 N/m
    K2: float = 4000.0                                                          # 后悬架刚度 N/m
    C1: float = 150.0                                                           # 前悬架阻尼 N·s/m
    C2: float = 150.0                                                           # 后悬架阻尼 N·s/m
    kt1: float = 1.0e5                                                          # 前轮胎刚度 N/m
    kt2: float = 1.0e5                                                          # 后轮胎刚度 N/m
    b1: float = 0.131                                                           # 质心到前轴距离 m
    b2: float = 0.131                                                           # 质心到后轴距离 m

    def __post_init__(self) -> None:
        values = self.asdict()
        if any(not math.isfinite(v) for v in values.values()):
            raise InvalidArgumentError("vehicle parameters must be finite")
        if any(values[k] <= 0 for k in ("m1", "m2", "m3", "I3", "kt1", "kt2", "b1", "b2")):
            raise InvalidArgumentError("masses, inertia, tire stiffnesses and axle distances must be positive")
        if any(values[k] < 0 for k in ("K1", "K2", "C1", "C2")):
            raise InvalidArgumentError("suspension stiffness and damping must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: float(v) for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    # 刚性车轴：阻尼忽略，悬架刚度取一个足够大的有限值以保持显式积分可行
    @classmethod
    def rigid_axle_defaults(cls) -> Self:
        return cls(C1 = 0.0, C2 = 0.0, K1 = 2.0e6, K2 = 2.0e6)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def wheelbase(self) -> float:
        return self.b1 + self.b2