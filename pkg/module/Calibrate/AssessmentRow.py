import dataclasses
import math
from typing import Any

@dataclasses.dataclass
class AssessmentRow():

    v: float                                                                    # 速度 m/s
    gd_true: float                                                              # 设定 GD
    rep: int                                                                    # 重复序号
    gd_hat: float = math.nan                                                    # 标定 GD
    pct_err: float = math.nan                                                   # 百分比误差
    accept_rate: float = math.nan                                               # 接受率
    f_obs: float = math.nan                                                     # 观测方差
    flags: list[str] = dataclasses.field(default_factory = list)                # 标记
    histogram: list[int] = dataclasses.field(default_factory = list)            # 后验直方图计数
    error: str = ""                                                             # 失败原因

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def is_failed(self) -> bool:
        return self.error != ""
