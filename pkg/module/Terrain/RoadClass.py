import bisect
import dataclasses
import math
from typing import ClassVar
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class RoadClass():

    label: str                                                                  # A..H
    gd_lower: float                                                             # 下界（含），A 为 0
    gd_upper: float                                                             # 上界（不含），H 为无穷

    # 相邻等级按 4 倍递增
    BOUNDS: ClassVar[tuple[float, ...]] = (32.0, 128.0, 512.0, 2048.0, 8192.0, 32768.0, 131072.0)
    LABELS: ClassVar[tuple[str, ...]] = ("A", "B", "C", "D", "E", "F", "G", "H")

    @classmethod
    def all(cls) -> list[Self]:
        edges = (0.0, ) + cls.BOUNDS + (math.inf, )
        return [cls(label, edges[i], edges[i + 1]) for i, label in enumerate(cls.LABELS)]

    # 区间左闭右开
    @classmethod
    def classify(cls, gd: float) -> Self:
        if math.isnan(gd) or gd < 0:
            raise InvalidArgumentError(f"gd must be non-negative, got {gd}")

        return cls.all()[bisect.bisect_right(cls.BOUNDS, gd)]

    def rank(self) -> int:
        return __class__.LABELS.index(self.label)

    def contains(self, gd: float) -> bool:
        return self.gd_lower <= gd < self.gd_upper