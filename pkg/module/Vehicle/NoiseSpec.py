import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class NoiseSpec():

    enabled: bool = False                                                       # 是否叠加测量噪声
    sigma: float = 1.0                                                          # 标准差 m/s²
    seed: int = 7                                                               # 随机种子

    def __post_init__(self) -> None:
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise InvalidArgumentError("noise sigma must be a finite non-negative number")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    @classmethod
    def disabled(cls) -> Self:
        return cls(enabled = False)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def with_seed(self, seed: int) -> Self:
        return dataclasses.replace(self, seed = seed)