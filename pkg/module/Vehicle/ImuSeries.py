import dataclasses

import numpy as np

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(eq = False)
class ImuSeries():

    sample_rate_hz: float                                                       # 采样率 Hz
    a_front: np.ndarray                                                         # 前轴竖向加速度 m/s²
    v_commanded: np.ndarray                                                     # 每个采样区间的指令速度 m/s
    positions_m: np.ndarray                                                     # 采样时刻前轮纵向位置 m
    a_clean: np.ndarray | None = None                                           # 未叠加噪声的加速度 m/s²

    def __post_init__(self) -> None:
        self.a_front = np.asarray(self.a_front, dtype = np.float64)
        self.v_commanded = np.asarray(self.v_commanded, dtype = np.float64)
        self.positions_m = np.asarray(self.positions_m, dtype = np.float64)

        if self.sample_rate_hz <= 0:
            raise InvalidArgumentError("sample rate must be positive")
        if self.a_front.shape != self.positions_m.shape or self.a_front.shape != self.v_commanded.shape:
            raise InvalidArgumentError("acceleration, velocity and position series must have equal length")
        if self.positions_m.size > 1 and np.any(np.diff(self.positions_m) < 0):
            raise InvalidArgumentError("positions must be nondecreasing")

    def get_count(self) -> int:
        return int(self.a_front.size)

    def times_s(self) -> np.ndarray:
        return np.arange(1, self.a_front.size + 1) / self.sample_rate_hz