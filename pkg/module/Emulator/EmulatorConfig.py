import dataclasses
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import InvalidArgumentError

@dataclasses.dataclass(frozen = True)
class EmulatorConfig():

    iters: int = 30000                                                          # Metropolis 总迭代数
    seed: int = 11                                                              # 随机种子
    beta_shape: float = 2.0                                                     # beta ~ Gamma(shape, rate)
    beta_rate: float = 1.0
    lambda_z_shape: float = 5.0                                                 # lambda_z ~ Gamma(shape, rate)
    lambda_z_rate: float = 5.0
    lambda_n_shape: float = 3.0                                                 # lambda_n ~ Gamma(shape, rate)
    lambda_n_rate: float = 0.003
    nugget_floor: float = 1.0e-8                                                # 块金方差下限

    # 最少迭代数
    MIN_ITERS = 1000

    def __post_init__(self) -> None:
        if self.iters < __class__.MIN_ITERS:
            raise InvalidArgumentError(f"surrogate training needs at least {__class__.MIN_ITERS} iterations, got {self.iters}")
        for k in ("beta_shape", "beta_rate", "lambda_z_shape", "lambda_z_rate", "lambda_n_shape", "lambda_n_rate"):
            if getattr(self, k) <= 0:
                raise InvalidArgumentError(f"{k} must be positive")
        if self.nugget_floor <= 0:
            raise InvalidArgumentError("nugget floor must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    # 依次对应 beta_v beta_gd lambda_z lambda_n
    def shapes(self) -> tuple[float, float, float, float]:
        return (self.beta_shape, self.beta_shape, self.lambda_z_shape, self.lambda_n_shape)

    def rates(self) -> tuple[float, float, float, float]:
        return (self.beta_rate, self.beta_rate, self.lambda_z_rate, self.lambda_n_rate)
