import dataclasses
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

@dataclasses.dataclass
class DesignPoint():

    index: int = 0                                                              # 设计点序号
    v: float = 0.0                                                              # 速度 m/s
    gd: float = 0.0                                                             # 粗糙度 GD
    seed: int = 0                                                               # 剖面随机种子
    f: float | None = None                                                      # 加速度方差 (m/s²)²，仿真前为空

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def is_simulated(self) -> bool:
        return self.f is not None
