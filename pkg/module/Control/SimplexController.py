import math

from base.Base import Base
from base.BaseError import InvalidArgumentError
from module.Control.ControllerConfig import ControllerConfig
from module.Control.ControllerState import ControllerState

# 性能模式与安全模式之间切换的速度控制器
class SimplexController(Base):

    @classmethod
    def check_gd(cls, gd_hat: float) -> None:
        if not math.isfinite(gd_hat) or gd_hat < 0:
            raise InvalidArgumentError(f"gd_hat must be finite and non-negative, got {gd_hat}")

    # 性能模式速度，输出截断到 [v_safety, v_max]
    @classmethod
    def performance_velocity(cls, cfg: ControllerConfig, gd_hat: float) -> float:
        gd = min(max(gd_hat, cfg.gd_min), cfg.gd_max)
        if cfg.law == Base.ControlLaw.LITERAL:
            v = cfg.kp * (cfg.midpoint() - gd)
        else:
            v = cfg.v_offset + cfg.kp * (cfg.midpoint() - gd)

        return min(max(v, cfg.v_safety), cfg.v_max)

    @classmethod
    def step(cls, cfg: ControllerConfig, state: ControllerState, gd_hat: float) -> tuple[float, ControllerState]:
        __class__.check_gd(gd_hat)

        if gd_hat > cfg.gd_max:
            v_cmd = cfg.v_safety
            mode = Base.ControlMode.SAFETY
        else:
            v_cmd = __class__.performance_velocity(cfg, gd_hat)
            mode = Base.ControlMode.PERFORMANCE

        return v_cmd, ControllerState(mode = mode, last_gd = gd_hat, last_v_cmd = v_cmd)

    # 滞回版本：安全模式需降到 gd_max - margin 以下才返回性能模式
    @classmethod
    def step_h(cls, cfg: ControllerConfig, state: ControllerState, gd_hat: float, reentry_margin: float = None) -> tuple[float, ControllerState]:
        margin = cfg.reentry_margin if reentry_margin is None else reentry_margin
        if not math.isfinite(margin) or margin < 0:
            raise InvalidArgumentError(f"reentry margin must be non-negative, got {margin}")

        __class__.check_gd(gd_hat)
        if margin > 0 and state.is_safety() and gd_hat >= cfg.gd_max - margin:
            v_cmd = cfg.v_safety
            return v_cmd, ControllerState(mode = Base.ControlMode.SAFETY, last_gd = gd_hat, last_v_cmd = v_cmd)

        return __class__.step(cfg, state, gd_hat)
