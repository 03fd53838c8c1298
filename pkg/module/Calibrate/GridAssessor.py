import concurrent.futures
import math

import numpy as np

from base.Base import Base
from base.BaseError import BaseError
from module.Calibrate.AssessmentRow import AssessmentRow
from module.Calibrate.Calibrator import Calibrator
from module.Calibrate.McmcConfig import McmcConfig
from module.Calibrate.Observation import Observation
from module.Design.DesignBuilder import DesignBuilder
from module.Design.DesignPoint import DesignPoint
from module.Emulator.Surrogate import Surrogate
from module.Localizer.Localizer import Localizer
from module.ProgressBar import ProgressBar
from module.Terrain.TerrainGenerator import TerrainGenerator
from module.Vehicle.NoiseSpec import NoiseSpec

# 逐格生成路面、仿真、标定并记录误差
class GridAssessor(Base):

    # 线程名前缀
    TASK_PREFIX: str = "ASSESS"

    # 后验直方图分箱数
    HISTOGRAM_BINS: int = 20

    # 默认网格
    DEFAULT_V: tuple[float, ...] = (0.75, 1.25, 1.75)
    DEFAULT_GD: tuple[float, ...] = (250.0, 300.0, 350.0, 400.0, 450.0, 500.0, 550.0)

    def __init__(self, builder: DesignBuilder, calibrator: Calibrator, noise: NoiseSpec, seed: int = 0, max_workers: int = 4) -> None:
        super().__init__()

        self.builder = builder
        self.calibrator = calibrator
        self.noise = noise
        self.seed = seed
        self.max_workers = max(1, max_workers)

    @classmethod
    def derive_seed(cls, *keys: int) -> int:
        return int(np.random.SeedSequence(keys).generate_state(1)[0])

    def assess_cell(self, surrogate: Surrogate, cfg: McmcConfig, cell: int, v: float, gd: float, rep: int) -> AssessmentRow:
        row = AssessmentRow(v = v, gd_true = gd, rep = rep)
        try:
            point = DesignPoint(index = cell, v = v, gd = gd, seed = __class__.derive_seed(self.seed, cell, rep, 0))
            profile = TerrainGenerator.generate(self.builder.point_spec(point))
            imu = self.builder.model.simulate(
                profile = profile,
                v = v,
                sample_rate_hz = self.builder.sample_rate_hz,
                noise = self.noise.with_seed(__class__.derive_seed(self.seed, cell, rep, 1)),
            )

            obs = Observation(f_obs = DesignBuilder.metric_f(imu.a_front), v = v, n_samples = imu.get_count())
            posterior = self.calibrator.calibrate(surrogate, obs, cfg.with_seed(__class__.derive_seed(self.seed, cell, rep, 2)))
            gd_hat, _, flags = Calibrator.posterior_summary(posterior)
            counts, _ = posterior.histogram(__class__.HISTOGRAM_BINS)

            row.gd_hat = gd_hat
            row.pct_err = 100.0 * (gd_hat - gd) / gd
            row.accept_rate = posterior.acceptance_rate
            row.f_obs = obs.f_obs
            row.flags = [str(v) for v in flags]
            row.histogram = [int(v) for v in counts]
        except BaseError as e:
            row.error = type(e).__name__
            row.flags = ["error"]
            self.error(Localizer.get().assess_cell_fail.replace("{V}", f"{v:.3f}").replace("{GD}", f"{gd:.1f}").replace("{REP}", str(rep)), e)

        return row

    # 网格按 (v, gd, rep) 顺序输出，单格失败不影响其余格
    def grid_assessment(self, surrogate: Surrogate, cfg: McmcConfig, v_list: list[float], gd_list: list[float], reps: int = 1) -> list[AssessmentRow]:
        cells = [
            (i * len(gd_list) + j, v, gd, rep)
            for i, v in enumerate(v_list)
            for j, gd in enumerate(gd_list)
            for rep in range(reps)
        ]
        if len(cells) == 0:
            return []

        rows: list[AssessmentRow] = [None] * len(cells)
        with ProgressBar(transient = True) as progress:
            pid = progress.new(Localizer.get().assess_progress, total = len(cells))

            with concurrent.futures.ThreadPoolExecutor(max_workers = self.max_workers, thread_name_prefix = __class__.TASK_PREFIX) as executor:
                futures = {
                    executor.submit(self.assess_cell, surrogate, cfg, cell, v, gd, rep): k
                    for k, (cell, v, gd, rep) in enumerate(cells)
                }
                for future in concurrent.futures.as_completed(futures):
                    rows[futures[future]] = future.result()
                    progress.update(pid, advance = 1)

        return rows

    # 每格 |百分比误差| 的中位数
    @classmethod
    def median_abs_error(cls, rows: list[AssessmentRow], v: float, gd: float) -> float:
        values = [abs(r.pct_err) for r in rows if r.v == v and r.gd_true == gd and not r.is_failed()]
        return float(np.median(values)) if len(values) > 0 else math.nan