import dataclasses
import hashlib
import json
import math
import os
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np
import scipy.linalg

from base.Base import Base
from base.BaseError import LoadFailedError
from base.BaseError import MissingArtifactError
from base.BaseError import TrainingFailedError
from module.Design.PriorBox import PriorBox
from module.Emulator.SurrogateHyper import SurrogateHyper
from module.Localizer.Localizer import Localizer

class Surrogate(Base):

    # 文件格式版本
    FORMAT_VERSION: str = "1"

    def __init__(
        self,
        inputs_scaled: np.ndarray,
        outputs_std: np.ndarray,
        hyper: SurrogateHyper,
        y_mean: float,
        y_scale: float,
        prior: PriorBox,
        nugget_floor: float = 1.0e-8,
        config_digest: str = "",
        noise_case: str = "",
    ) -> None:
        super().__init__()

        self.inputs_scaled = np.asarray(inputs_scaled, dtype = np.float64)
        self.outputs_std = np.asarray(outputs_std, dtype = np.float64)
        self.hyper = hyper
        self.y_mean = float(y_mean)
        self.y_scale = float(y_scale)
        self.prior = prior
        self.nugget_floor = nugget_floor
        self.config_digest = config_digest
        self.noise_case = noise_case

        # 载入时与运行时配置不一致等提示
        self.warnings: list[str] = []

        self.factor, self.alpha = __class__.factorize(self.inputs_scaled, self.outputs_std, hyper, nugget_floor)

    # 平方指数核，x 已缩放到 [0,1]²
    @classmethod
    def kernel(cls, x1: np.ndarray, x2: np.ndarray, hyper: SurrogateHyper) -> np.ndarray:
        diff = x1[:, None, :] - x2[None, :, :]
        return np.exp(-np.sum(hyper.betas() * diff ** 2, axis = -1)) / hyper.lambda_z

    @classmethod
    def covariance(cls, x: np.ndarray, hyper: SurrogateHyper, nugget_floor: float) -> np.ndarray:
        k = __class__.kernel(x, x, hyper)
        k = 0.5 * (k + k.T)
        k[np.diag_indices_from(k)] += hyper.nugget(nugget_floor)
        return k

    @classmethod
    def factorize(cls, x: np.ndarray, y: np.ndarray, hyper: SurrogateHyper, nugget_floor: float) -> tuple[tuple[np.ndarray, bool], np.ndarray]:
        k = __class__.covariance(x, hyper, nugget_floor)
        try:
            factor = scipy.linalg.cho_factor(k, lower = True, check_finite = True)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise TrainingFailedError(
                f"training covariance is not positive definite, condition number {np.linalg.cond(k):.3e}",
                condition_number = float(np.linalg.cond(k)),
            ) from e

        return factor, scipy.linalg.cho_solve(factor, y)

    # 训练数据的边缘对数似然，协方差不正定时返回 -inf
    @classmethod
    def marginal_log_likelihood(cls, x: np.ndarray, y: np.ndarray, hyper: SurrogateHyper, nugget_floor: float) -> float:
        k = __class__.covariance(x, hyper, nugget_floor)
        try:
            factor = scipy.linalg.cho_factor(k, lower = True, check_finite = False)
        except np.linalg.LinAlgError:
            return -math.inf

        alpha = scipy.linalg.cho_solve(factor, y, check_finite = False)
        log_det = 2.0 * float(np.sum(np.log(np.diag(factor[0]))))
        return -0.5 * float(y @ alpha) - 0.5 * log_det - 0.5 * y.size * math.log(2.0 * math.pi)

    def log_likelihood(self, hyper: SurrogateHyper = None) -> float:
        return __class__.marginal_log_likelihood(
            self.inputs_scaled,
            self.outputs_std,
            self.hyper if hyper is None else hyper,
            self.nugget_floor,
        )

    def standardize(self, log_f: Any) -> Any:
        return (np.asarray(log_f) - self.y_mean) / self.y_scale

    def destandardize(self, z: Any) -> Any:
        return np.asarray(z) * self.y_scale + self.y_mean

    # 对数空间的预测均值与标准差（含块金方差）
    def predict_log(self, v: Any, gd: Any) -> tuple[np.ndarray, np.ndarray]:
        x = self.prior.scale(v, gd)
        k_star = __class__.kernel(x, self.inputs_scaled, self.hyper)
        mean_std = k_star @ self.alpha

        solved = scipy.linalg.cho_solve(self.factor, k_star.T)
        var_std = 1.0 / self.hyper.lambda_z - np.sum(k_star * solved.T, axis = 1)
        var_std = np.maximum(var_std, 0.0) + self.hyper.nugget(self.nugget_floor)

        return self.destandardize(mean_std), np.sqrt(var_std) * self.y_scale

    # f 空间的预测均值与标准差，按对数正态换算
    def predict(self, v: float, gd: float) -> tuple[float, float]:
        if not self.prior.contains(v, gd):
            self.warning(Localizer.get().emulator_outside_box.replace("{V}", f"{v:.4f}").replace("{GD}", f"{gd:.2f}"))

        mean, std = self.predict_many(np.atleast_1d(v), np.atleast_1d(gd))
        return float(mean[0]), float(std[0])

    def predict_many(self, v: np.ndarray, gd: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mu, sigma = self.predict_log(v, gd)
        mean = np.exp(mu + 0.5 * sigma ** 2)
        std = mean * np.sqrt(np.expm1(sigma ** 2))
        return mean, std

    # 留一交叉验证的闭式解，返回 f 空间的预测中位数
    def loo(self) -> np.ndarray:
        k_inv = scipy.linalg.cho_solve(self.factor, np.eye(self.outputs_std.size))
        mean_std = self.outputs_std - self.alpha / np.diag(k_inv)
        return np.exp(self.destandardize(mean_std))

    # 去掉块金精度项的插值副本，训练点处仅保留 nugget_floor
    def interpolating(self) -> Self:
        return __class__(
            inputs_scaled = self.inputs_scaled,
            outputs_std = self.outputs_std,
            hyper = dataclasses.replace(self.hyper, lambda_n = math.inf),
            y_mean = self.y_mean,
            y_scale = self.y_scale,
            prior = self.prior,
            nugget_floor = self.nugget_floor,
            config_digest = self.config_digest,
            noise_case = self.noise_case,
        )

    def training_outputs(self) -> np.ndarray:
        return np.exp(self.destandardize(self.outputs_std))

    def get_count(self) -> int:
        return int(self.outputs_std.size)

    def payload(self) -> dict[str, Any]:
        return {
            "version": __class__.FORMAT_VERSION,
            "config_digest": self.config_digest,
            "noise_case": self.noise_case,
            "prior": self.prior.asdict(),
            "hyper": self.hyper.asdict(),
            "nugget_floor": self.nugget_floor,
            "y_mean": self.y_mean,
            "y_scale": self.y_scale,
            "inputs_scaled": self.inputs_scaled.tolist(),
            "outputs_std": self.outputs_std.tolist(),
        }

    def digest(self) -> str:
        return __class__.payload_digest(self.payload())

    @classmethod
    def payload_digest(cls, payload: dict[str, Any]) -> str:
        return hashlib.sha256(json.dumps(payload, sort_keys = True).encode("utf-8")).hexdigest()

    def save(self, path: str) -> str:
        payload = self.payload()
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok = True)
        with open(path, "w", encoding = "utf-8") as writer:
            json.dump({"digest": __class__.payload_digest(payload), "surrogate": payload}, writer, indent = 4)

        return path

    @classmethod
    def load(cls, path: str, prior: PriorBox = None, config_digest: str = None) -> Self:
        if not os.path.isfile(path):
            raise MissingArtifactError(f"surrogate file {path} does not exist")

        try:
            with open(path, "r", encoding = "utf-8-sig") as reader:
                data = json.load(reader)
            payload = data["surrogate"]
            digest = data["digest"]
        except Exception as e:
            raise LoadFailedError(f"surrogate file {path} is not readable: {e}") from e

        if payload.get("version") != __class__.FORMAT_VERSION:
            raise LoadFailedError(f"surrogate file {path} has version {payload.get('version')}, expected {__class__.FORMAT_VERSION}")
        if __class__.payload_digest(payload) != digest:
            raise LoadFailedError(f"surrogate file {path} failed the digest check")

        try:
            surrogate = cls(
                inputs_scaled = np.array(payload["inputs_scaled"], dtype = np.float64).reshape(-1, 2),
                outputs_std = np.array(payload["outputs_std"], dtype = np.float64),
                hyper = SurrogateHyper.from_dict(payload["hyper"]),
                y_mean = payload["y_mean"],
                y_scale = payload["y_scale"],
                prior = PriorBox.from_dict(payload["prior"]),
                nugget_floor = payload["nugget_floor"],
                config_digest = payload.get("config_digest", ""),
                noise_case = payload.get("noise_case", ""),
            )
        except TrainingFailedError:
            raise
        except Exception as e:
            raise LoadFailedError(f"surrogate file {path} is malformed: {e}") from e

        if prior is not None and surrogate.prior != prior:
            surrogate.warnings.append("prior_mismatch")
            surrogate.warning(Localizer.get().emulator_prior_mismatch.replace("{PATH}", path))
        if config_digest is not None and surrogate.config_digest != "" and surrogate.config_digest != config_digest:
            surrogate.warnings.append("config_mismatch")
            surrogate.warning(Localizer.get().emulator_config_mismatch.replace("{PATH}", path))

        return surrogate