import dataclasses
import math
from typing import Any

from base.Base import Base

@dataclasses.dataclass(frozen = True)
class LoopRecord():

    kind: Base.RecordKind                                                       # 记录类型
    t: float                                                                    # 时间 s
    x: float                                                                    # 前轮位置 m
    v_cmd: float                                                                # 指令速度 m/s
    gd_hat: float = math.nan                                                    # 标定 GD
    gd_std: float = math.nan                                                    # 后验标准差
    mode: Base.ControlMode = Base.ControlMode.PERFORMANCE                       # 控制模式
    f_obs: float = math.nan                                                     # 缓冲区加速度方差
    gd_true: float = math.nan                                                   # 当前路段设定 GD
    window_start: int = -1                                                      # 缓冲区首样本序号
    window_end: int = -1                                                        # 缓冲区末样本序号（不含）
    x_window_start: float = math.nan                                            # 缓冲区首样本位置 m

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def is_calibration(self) -> bool:
        return self.kind == Base.RecordKind.CALIBRATION
