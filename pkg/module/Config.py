import copy
import dataclasses
import hashlib
import json
import os
import threading
from typing import Any
from typing import ClassVar
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseLanguage import BaseLanguage
from base.LogManager import LogManager
from module.Localizer.Localizer import Localizer

@dataclasses.dataclass
class Config():

    # Application
    app_language: BaseLanguage.Enum = BaseLanguage.Enum.EN
    expert_mode: bool = False
    output_folder: str = "./output"

    # Terrain
    terrain: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "gd_target": 450.0,
        "length_m": 100.0,
        "spacing_m": 0.006,
        "n_min": 0.01,
        "n_max": 10.0,
        "seed": 0,
        "psd_method": "PERIODOGRAM",
    })

    # Vehicle
    vehicle: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "m1": 1.5,
        "m2": 1.5,
        "m3": 17.0,
        "I3": 0.4,
        "K1": 4000.0,
        "K2": 4000.0,
        "C1": 150.0,
        "C2": 150.0,
        "kt1": 1.0e5,
        "kt2": 1.0e5,
        "b1": 0.131,
        "b2": 0.131,
        "dt_internal": 2.0e-5,
        "sample_rate_hz": 120.0,
    })

    # Noise
    noise: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "sigma": 1.0,
        "seed": 7,
    })

    # Design
    design: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "n_points": 198,
        "v_min": 0.5,
        "v_max": 2.0,
        "gd_min": 200.0,
        "gd_max": 600.0,
        "training_length_m": 21.0,
        "seed": 2024,
        "max_workers": 4,
    })

    # Emulator
    emulator: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "iters": 30000,
        "seed": 11,
        "beta_shape": 2.0,
        "beta_rate": 1.0,
        "lambda_z_shape": 5.0,
        "lambda_z_rate": 5.0,
        "lambda_n_shape": 3.0,
        "lambda_n_rate": 0.003,
        "nugget_floor": 1.0e-8,
    })

    # MCMC
    mcmc: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "n_total": 5000,
        "n_burn": 1000,
        "step_tune_iters": 1000,
        "step_tune_burn": 50,
        "seed": 3,
        "retune_each_call": True,
        "lambda_obs_shape": 1.0,
        "lambda_obs_rate": 1.0e-3,
    })

    # Control
    control: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "gd_min": 250.0,
        "gd_max": 350.0,
        "kp": 0.01,
        "v_safety": 1.0,
        "v_max": 2.0,
        "v_offset": 1.5,
        "law": "AFFINE",
        "reentry_margin": 0.0,
    })

    # Loop
    loop: dict[str, Any] = dataclasses.field(default_factory = lambda: {
        "buffer_len": 1000,
        "trigger_stride": 250,
        "noise_case": "A",
        "v_initial": 1.5,
        "delay_samples": 0,
        "seed": 5,
        "exclude_boundary": False,
    })

    # 类属性
    CONFIG_PATH: ClassVar[str] = "./resource/config.json"
    CONFIG_LOCK: ClassVar[threading.Lock] = threading.Lock()
    SECTIONS: ClassVar[tuple[str, ...]] = ("terrain", "vehicle", "noise", "design", "emulator", "mcmc", "control", "loop")

    # 参与产物摘要的配置项，None 表示整节
    DIGEST_KEYS: ClassVar[dict[str, tuple[str, ...] | None]] = {
        "vehicle": None,
        "terrain": ("spacing_m", "n_min", "n_max"),
        "noise": ("sigma", ),
        "design": ("v_min", "v_max", "gd_min", "gd_max", "training_length_m"),
    }

    def load(self, path: str = None) -> Self:
        if path is None:
            path = __class__.CONFIG_PATH

        with __class__.CONFIG_LOCK:
            try:
                if os.path.isfile(path):
                    with open(path, "r", encoding = "utf-8-sig") as reader:
                        config: dict = json.load(reader)
                        for k, v in config.items():
                            if not hasattr(self, k):
                                continue
                            # 分节配置按键合并，缺失的键保留默认值
                            if k in __class__.SECTIONS and isinstance(v, dict):
                                getattr(self, k).update(v)
                            else:
                                setattr(self, k, v)
            except Exception as e:
                LogManager.get().error(f"{Localizer.get().log_read_file_fail}", e)

        return self

    def save(self, path: str = None) -> Self:
        if path is None:
            path = __class__.CONFIG_PATH

        with __class__.CONFIG_LOCK:
            try:
                os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok = True)
                with open(path, "w", encoding = "utf-8") as writer:
                    json.dump(self.asdict(), writer, indent = 4, ensure_ascii = False)
            except Exception as e:
                LogManager.get().error(f"{Localizer.get().log_write_file_fail}", e)

        return self

    def asdict(self) -> dict[str, Any]:
        return copy.deepcopy(dataclasses.asdict(self))

    # 覆盖单个配置项，None 表示未通过命令行指定
    def override(self, section: str, key: str, value: Any) -> None:
        if value is not None:
            getattr(self, section)[key] = value

    # 训练产物的物理与先验摘要，种子、点数与线程数不参与
    def digest(self) -> str:
        data = {
            section: {k: v for k, v in getattr(self, section).items() if keys is None or k in keys}
            for section, keys in __class__.DIGEST_KEYS.items()
        }
        return hashlib.sha256(json.dumps(data, sort_keys = True).encode("utf-8")).hexdigest()

    # 闭环采样率以 vehicle 节为准，loop 节中残留的旧键不一致时返回 False
    def sample_rate_consistent(self) -> bool:
        if "sample_rate_hz" not in self.loop:
            return True
        return float(self.loop["sample_rate_hz"]) == float(self.vehicle["sample_rate_hz"])