import dataclasses
import math
from typing import Any
from typing import ClassVar
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidSpecError

@dataclasses.dataclass(frozen = True)
class RoadSpec():

    gd_target: float = 450.0                                                    # 目标 GD，即 n0 处位移 PSD × 10^6
    length_m: float = 100.0                                                     # 长度 m
    spacing_m: float = 0.006                                                    # 网格间距 m
    seed: int = 0                                                               # 随机种子
    n_min: float = 0.01                                                         # 频带下限 cycles/m
    n_max: float = 10.0                                                         # 频带上限 cycles/m

    # 参考空间频率 cycles/m
    N0: ClassVar[float] = 0.1

    # 位移 PSD 指数
    W: ClassVar[float] = 2.0

    def __post_init__(self) -> None:
        for k in ("gd_target", "length_m", "spacing_m", "n_min", "n_max"):
            if not math.isfinite(getattr(self, k)):
                raise InvalidSpecError(f"{k} must be finite")

        if self.gd_target <= 0:
            raise InvalidSpecError("gd must be positive")
        if self.length_m <= 0:
            raise InvalidSpecError("length must be positive")
        if not (0 < self.spacing_m <= self.length_m):
            raise InvalidSpecError("spacing must lie in (0, length]")
        if not (0 < self.n_min < self.n_max):
            raise InvalidSpecError("band must satisfy 0 < n_min < n_max")
        if self.n_max > self.nyquist():
            raise InvalidSpecError(f"n_max {self.n_max} exceeds the Nyquist frequency {self.nyquist():.6g} of the grid")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def band(self) -> tuple[float, float]:
        return (self.n_min, self.n_max)

    def nyquist(self) -> float:
        return 1.0 / (2.0 * self.spacing_m)

    # 单边位移 PSD Gd(n)，单位 m^3
    def psd_at(self, n: Any) -> Any:
        return (self.gd_target * 1.0e-6) * (n / __class__.N0) ** (-__class__.W)

    # 纯文本键值块
    def to_text(self) -> str:
        return "\n".join(f"{k} = {v!r}" for k, v in self.asdict().items())