import concurrent.futures
import hashlib
import json
import math

import numpy as np
import scipy.stats

from base.Base import Base
from base.BaseError import InsufficientDataError
from base.BaseError import IntegrationDivergedError
from base.BaseError import InvalidArgumentError
from module.Design.DesignPoint import DesignPoint
from module.Design.PriorBox import PriorBox
from module.Design.TrainingSet import TrainingSet
from module.Localizer.Localizer import Localizer
from module.ProgressBar import ProgressBar
from module.Terrain.RoadSpec import RoadSpec
from module.Terrain.TerrainGenerator import TerrainGenerator
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.NoiseSpec import NoiseSpec

class DesignBuilder(Base):

    # 线程名前缀
    TASK_PREFIX: str = "DESIGN"

    # 速度趋势多项式阶数
    TREND_DEGREE: int = 3

    # 秩相关低于该值时提示设计输出对 GD 不敏感
    RANK_THRESHOLD: float = 0.8

    def __init__(
        self,
        model: HalfCarModel,
        terrain: RoadSpec,
        sample_rate_hz: float = 120.0,
        training_length_m: float = 21.0,
        max_workers: int = 4,
    ) -> None:
        super().__init__()

        if training_length_m <= model.params.wheelbase():
            raise InvalidArgumentError(f"training length {training_length_m} m does not exceed the wheelbase")

        self.model = model
        self.terrain = terrain
        self.sample_rate_hz = sample_rate_hz
        self.training_length_m = training_length_m
        self.max_workers = max(1, max_workers)

    # 每一维独立分层，层内随机抖动，列间随机配对
    @classmethod
    def lhs_design(cls, n: int, prior: PriorBox, seed: int) -> list[DesignPoint]:
        if n < 2:
            raise InvalidArgumentError(f"LHS needs at least 2 points, got {n}")

        rng = np.random.default_rng(seed)
        unit = np.empty((n, 2))
        for k in range(2):
            unit[:, k] = (rng.permutation(n) + rng.uniform(size = n)) / n

        # 浮点舍入可能把点推到上一层的边界上
        unit = np.minimum(unit, np.nextafter(1.0, 0.0))

        seeds = rng.integers(0, 2 ** 31 - 1, size = n)
        v = prior.v_min + unit[:, 0] * (prior.v_max - prior.v_min)
        gd = prior.gd_min + unit[:, 1] * (prior.gd_max - prior.gd_min)

        return [
            DesignPoint(index = i, v = float(v[i]), gd = float(gd[i]), seed = int(seeds[i]))
            for i in range(n)
        ]

    # 以 T 归一化的方差
    @classmethod
    def metric_f(cls, a_front: np.ndarray) -> float:
        a_front = np.asarray(a_front, dtype = np.float64)
        if a_front.size < 2:
            raise InsufficientDataError(f"metric needs at least 2 samples, got {a_front.size}")

        return float(np.var(a_front, ddof = 0))

    # 每个设计点独立的噪声种子
    @classmethod
    def point_noise(cls, noise: NoiseSpec, index: int) -> NoiseSpec:
        seed = int(np.random.SeedSequence((noise.seed, index)).generate_state(1)[0])
        return noise.with_seed(seed)

    def point_spec(self, point: DesignPoint) -> RoadSpec:
        return RoadSpec(
            gd_target = point.gd,
            length_m = self.training_length_m,
            spacing_m = self.terrain.spacing_m,
            seed = point.seed,
            n_min = self.terrain.n_min,
            n_max = self.terrain.n_max,
        )

    def simulate_point(self, point: DesignPoint, noise: NoiseSpec) -> DesignPoint:
        profile = TerrainGenerator.generate(self.point_spec(point))

        try:
            imu = self.model.simulate(
                profile = profile,
                v = point.v,
                sample_rate_hz = self.sample_rate_hz,
                noise = __class__.point_noise(noise, point.index),
            )
        except IntegrationDivergedError as e:
            raise IntegrationDivergedError(
                f"design point {point.index} (v = {point.v:.4f}, gd = {point.gd:.2f}): {e}",
                step = e.step,
            ) from e

        return DesignPoint(
            index = point.index,
            v = point.v,
            gd = point.gd,
            seed = point.seed,
            f = __class__.metric_f(imu.a_front),
        )

    def provenance(self) -> dict[str, str]:
        terrain = self.terrain.asdict()
        terrain.pop("gd_target", None)
        terrain.pop("seed", None)
        terrain["length_m"] = self.training_length_m

        vehicle = self.model.params.asdict()
        vehicle["dt_internal"] = self.model.dt_internal
        vehicle["sample_rate_hz"] = self.sample_rate_hz

        return {
            "vehicle_digest": __class__.digest(vehicle),
            "terrain_digest": __class__.digest(terrain),
        }

    @classmethod
    def digest(cls, data: dict) -> str:
        return hashlib.sha256(json.dumps(data, sort_keys = True).encode("utf-8")).hexdigest()

    # 各设计点并行仿真，结果按序号排列
    def build_training_set(self, design: list[DesignPoint], prior: PriorBox, noise: NoiseSpec) -> TrainingSet:
        if len(design) == 0:
            raise InvalidArgumentError("design is empty")

        results: dict[int, DesignPoint] = {}
        with ProgressBar(transient = True) as progress:
            pid = progress.new(Localizer.get().design_progress, total = len(design))

            with concurrent.futures.ThreadPoolExecutor(max_workers = self.max_workers, thread_name_prefix = __class__.TASK_PREFIX) as executor:
                futures = {executor.submit(self.simulate_point, point, noise): point for point in design}
                for future in concurrent.futures.as_completed(futures):
                    point = future.result()
                    results[point.index] = point
                    progress.update(pid, advance = 1)

        points = [results[point.index] for point in design]
        self.info(Localizer.get().design_done.replace("{COUNT}", str(len(points))))

        return TrainingSet(
            points = points,
            prior = prior,
            noise = noise,
            provenance = self.provenance(),
        )

    # 去除速度趋势后 gd 与 log f 的 Spearman 秩相关
    # 速度趋势取 log f 对 log v 的三次多项式最小二乘拟合
    @classmethod
    def rank_monotonicity(cls, ts: TrainingSet) -> float:
        v = ts.velocities()
        gd = ts.gds()
        f = ts.outputs()

        if np.any(f <= 0) or np.unique(v).size <= __class__.TREND_DEGREE:
            return math.nan

        log_v = np.log(v)
        log_f = np.log(f)
        trend = np.polynomial.Polynomial.fit(log_v, log_f, __class__.TREND_DEGREE)
        rho = scipy.stats.spearmanr(gd, log_f - trend(log_v)).statistic

        return float(rho)
