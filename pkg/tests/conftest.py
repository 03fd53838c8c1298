import numpy as np
import pytest

from module.Config import Config
from module.Design.DesignBuilder import DesignBuilder
from module.Design.DesignPoint import DesignPoint
from module.Design.PriorBox import PriorBox
from module.Design.TrainingSet import TrainingSet
from module.Emulator.EmulatorConfig import EmulatorConfig
from module.Emulator.EmulatorTrainer import EmulatorTrainer
from module.Emulator.Surrogate import Surrogate
from module.Emulator.SurrogateHyper import SurrogateHyper
from module.Terrain.RoadSpec import RoadSpec
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.HalfCarParams import HalfCarParams
from module.Vehicle.NoiseSpec import NoiseSpec

# 光滑的合成响应面，随 GD 单调递增
def synthetic_log_f(v: np.ndarray, gd: np.ndarray) -> np.ndarray:
    return 1.5 + 2.0 * np.log(np.asarray(gd) / 400.0) + 1.0 * (np.asarray(v) - 1.25)

@pytest.fixture(scope = "session")
def prior() -> PriorBox:
    return PriorBox()

@pytest.fixture(scope = "session")
def model() -> HalfCarModel:
    return HalfCarModel(HalfCarParams(), dt_internal = 2.0e-5)

@pytest.fixture(scope = "session")
def synthetic_training_set(prior: PriorBox) -> TrainingSet:
    design = DesignBuilder.lhs_design(40, prior, seed = 1)
    points = [
        DesignPoint(index = p.index, v = p.v, gd = p.gd, seed = p.seed, f = float(np.exp(synthetic_log_f(p.v, p.gd))))
        for p in design
    ]
    return TrainingSet(points = points, prior = prior, noise = NoiseSpec.disabled())

@pytest.fixture(scope = "session")
def synthetic_surrogate(synthetic_training_set: TrainingSet) -> Surrogate:
    return EmulatorTrainer.fit(synthetic_training_set, SurrogateHyper(beta_v = 2.0, beta_gd = 2.0, lambda_z = 1.0, lambda_n = 1.0e6))

# 默认配置下的 198 点无噪声训练集与代理模型，只在 slow 用例中构建
@pytest.fixture(scope = "session")
def reference_training_set(model: HalfCarModel, prior: PriorBox) -> TrainingSet:
    config = Config()
    builder = DesignBuilder(
        model = model,
        terrain = RoadSpec.from_dict(config.terrain),
        sample_rate_hz = float(config.vehicle["sample_rate_hz"]),
        training_length_m = float(config.design["training_length_m"]),
        max_workers = int(config.design["max_workers"]),
    )
    design = DesignBuilder.lhs_design(int(config.design["n_points"]), prior, int(config.design["seed"]))
    return builder.build_training_set(design, prior, NoiseSpec.disabled())

@pytest.fixture(scope = "session")
def reference_surrogate(reference_training_set: TrainingSet) -> Surrogate:
    return EmulatorTrainer(EmulatorConfig.from_dict(Config().emulator)).train(reference_training_set)

@pytest.fixture
def config_path(tmp_path) -> str:
    path = str(tmp_path / "config.json")
    Config(output_folder = str(tmp_path / "output")).save(path)
    return path
