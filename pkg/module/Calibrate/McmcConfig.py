import dataclasses
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class McmcConfig():

    n_total: int = 5000                                                         # 主链总长度
    n_burn: int = 1000                                                          # 预烧长度
    step_tune_iters: int = 1000                                                 # 调步长总迭代数
    step_tune_burn: int = 50                                                    # 每个调步块丢弃的迭代数
    seed: int = 3                                                               # 随机种子
    retune_each_call: bool = True                                               # 每次标定都重新调步长
    lambda_obs_shape: float = 1.0                                               # 观测精度 Gamma 先验
    lambda_obs_rate: float = 1.0e-3

    # 调步块数量
    TUNE_BLOCKS = 10

    def __post_init__(self) -> None:
        if not (0 <= self.n_burn < self.n_total):
            raise InvalidArgumentError(f"MCMC needs 0 <= n_burn < n_total, got n_burn = {self.n_burn}, n_total = {self.n_total}")
        if self.step_tune_iters < 1 or self.step_tune_burn < 1:
            raise InvalidArgumentError("tuning iteration counts must be at least 1")
        if self.lambda_obs_shape <= 0 or self.lambda_obs_rate <= 0:
            raise InvalidArgumentError("observation precision prior parameters must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def retained(self) -> int:
        return self.n_total - self.n_burn

    def with_seed(self, seed: int) -> Self:
        return dataclasses.replace(self, seed = seed)

    # 调步块长度与每块丢弃数
    def tune_blocks(self) -> tuple[int, int, int]:
        blocks = min(__class__.TUNE_BLOCKS, self.step_tune_iters)
        length = max(1, self.step_tune_iters // blocks)
        discard = min(self.step_tune_burn, length - 1)
        return blocks, length, discard
