import dataclasses
import math
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np

from base.BaseError import InvalidArgumentError
from module.Terrain.RoadProfile import RoadProfile
from module.Terrain.RoadSpec import RoadSpec
from module.Terrain.TerrainGenerator import TerrainGenerator

@dataclasses.dataclass(frozen = True)
class TrackSpec():

    segments: tuple[tuple[float, float], ...]                                   # 各段 (长度 m, 设定 GD)
    spacing_m: float = 0.006                                                    # 网格间距 m
    seed: int = 0                                                               # 随机种子
    n_min: float = 0.01                                                         # 频带下限 cycles/m
    n_max: float = 10.0                                                         # 频带上限 cycles/m

    def __post_init__(self) -> None:
        segments = tuple((float(length), float(gd)) for length, gd in self.segments)
        if len(segments) == 0:
            raise InvalidArgumentError("a track needs at least one segment")
        if any(not math.isfinite(length) or length <= 0 for length, _ in segments):
            raise InvalidArgumentError("segment lengths must be positive")

        object.__setattr__(self, "segments", segments)

    # 三段 150 m 参考路面
    @classmethod
    def reference(cls, seed: int = 0) -> Self:
        return cls(segments = ((50.0, 300.0), (50.0, 500.0), (50.0, 300.0)), seed = seed)

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        filtered_data["segments"] = tuple(tuple(v) for v in filtered_data.get("segments", ()))
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        data = dataclasses.asdict(self)
        data["segments"] = [list(v) for v in self.segments]
        return data

    def segment_specs(self) -> list[RoadSpec]:
        return [
            RoadSpec(
                gd_target = gd,
                length_m = length,
                spacing_m = self.spacing_m,
                seed = int(np.random.SeedSequence((self.seed, i)).generate_state(1)[0]),
                n_min = self.n_min,
                n_max = self.n_max,
            )
            for i, (length, gd) in enumerate(self.segments)
        ]

    # 拼接后的剖面与按实际生成长度计算的分段边界
    def build(self) -> tuple[RoadProfile, np.ndarray]:
        profiles = [TerrainGenerator.generate(spec) for spec in self.segment_specs()]
        boundaries = np.cumsum([p.length() for p in profiles])
        return TerrainGenerator.concat(profiles), boundaries

    def gd_at(self, x: float, boundaries: np.ndarray) -> float:
        k = min(int(np.searchsorted(boundaries, x, side = "left")), len(self.segments) - 1)
        return self.segments[k][1]

    def total_length(self) -> float:
        return float(sum(length for length, _ in self.segments))
