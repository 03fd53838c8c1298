import dataclasses
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.Base import Base
from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class LoopConfig():

    buffer_len: int = 1000                                                      # 滑动缓冲区长度
    sample_rate_hz: float = 120.0                                               # IMU 采样率 Hz
    trigger_stride: int = 250                                                   # 两次标定之间的新样本数
    noise_case: Base.NoiseCase = Base.NoiseCase.A                               # 噪声工况
    v_initial: float = 1.5                                                      # 初始速度 m/s
    delay_samples: int = 0                                                      # 标定结果生效延迟（样本数）
    seed: int = 5                                                               # 随机种子
    exclude_boundary: bool = False                                              # RMSE 是否剔除跨段窗口

    def __post_init__(self) -> None:
        if self.buffer_len < 2:
            raise InvalidArgumentError(f"buffer length must be at least 2, got {self.buffer_len}")
        if not (1 <= self.trigger_stride <= self.buffer_len):
            raise InvalidArgumentError(f"trigger stride must lie in [1, buffer_len], got {self.trigger_stride}")
        if self.sample_rate_hz <= 0:
            raise InvalidArgumentError("sample rate must be positive")
        if self.delay_samples < 0:
            raise InvalidArgumentError("delay must be non-negative")
        if not (0 < self.v_initial <= 10.0):
            raise InvalidArgumentError(f"initial velocity must lie in (0, 10] m/s, got {self.v_initial}")

        object.__setattr__(self, "noise_case", Base.NoiseCase(self.noise_case))

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def window_seconds(self) -> float:
        return self.buffer_len / self.sample_rate_hz
