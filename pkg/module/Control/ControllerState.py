import dataclasses
import math
from typing import Any

from base.Base import Base

@dataclasses.dataclass(frozen = True)
class ControllerState():

    mode: Base.ControlMode = Base.ControlMode.PERFORMANCE                       # 当前模式
    last_gd: float = math.nan                                                   # 最近一次标定 GD
    last_v_cmd: float = 1.5                                                     # 最近一次指令速度 m/s

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def is_safety(self) -> bool:
        return self.mode == Base.ControlMode.SAFETY
