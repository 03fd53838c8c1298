import math

import numpy as np
import scipy.signal

from base.Base import Base
from base.BaseError import InsufficientDataError
from module.Terrain.PsdEstimate import PsdEstimate
from module.Terrain.RoadClass import RoadClass
from module.Terrain.RoadProfile import RoadProfile
from module.Terrain.RoadSpec import RoadSpec

class PsdEstimator(Base):

    # 最少样本数
    MIN_SAMPLES: int = 64

    # 未携带生成参数时使用的拟合频带
    DEFAULT_BAND: tuple[float, float] = (0.01, 10.0)

    # Welch 单段长度上限
    WELCH_NPERSEG: int = 4096

    def __init__(self) -> None:
        super().__init__()

    @classmethod
    def estimate(cls, profile: RoadProfile, method: Base.PsdMethod = Base.PsdMethod.PERIODOGRAM) -> PsdEstimate:
        if profile.get_count() < __class__.MIN_SAMPLES:
            raise InsufficientDataError(f"PSD estimation needs at least {__class__.MIN_SAMPLES} samples, got {profile.get_count()}")

        fs = 1.0 / profile.spacing_m
        if method == Base.PsdMethod.WELCH:
            nperseg = min(profile.get_count(), __class__.WELCH_NPERSEG)
            frequencies, values = scipy.signal.welch(profile.heights_m, fs = fs, window = "hann", nperseg = nperseg, detrend = "constant")
        else:
            # 矩形窗，积分严格等于方差
            frequencies, values = scipy.signal.periodogram(profile.heights_m, fs = fs, window = "boxcar", detrend = "constant")

        # 去掉直流分量
        keep = frequencies > 0
        frequencies, values = frequencies[keep], values[keep]
        df = float(frequencies[1] - frequencies[0]) if frequencies.size > 1 else float(frequencies[0])

        band = profile.spec.band() if profile.spec is not None else __class__.DEFAULT_BAND
        gd_fitted, slope = cls.fit(frequencies, values, band, fs / 2.0)

        return PsdEstimate(
            frequencies = frequencies,
            values = values,
            gd_fitted = gd_fitted,
            slope = slope,
            df = df,
        )

    # 对数坐标最小二乘：斜率固定为 -2 求 n0 处截距，另做一次自由斜率拟合
    @classmethod
    def fit(cls, frequencies: np.ndarray, values: np.ndarray, band: tuple[float, float], nyquist: float) -> tuple[float, float]:
        mask = (frequencies >= band[0]) & (frequencies <= band[1]) & (frequencies < nyquist) & (values > 0)
        if not np.any(mask):
            return 0.0, math.nan

        log_n = np.log10(frequencies[mask] / RoadSpec.N0)
        log_p = np.log10(values[mask])

        intercept = float(np.mean(log_p + RoadSpec.W * log_n))
        gd_fitted = 10.0 ** intercept * 1.0e6

        slope = float(np.polyfit(log_n, log_p, 1)[0]) if log_n.size >= 2 else math.nan

        return gd_fitted, slope

    @classmethod
    def classify_profile(cls, profile: RoadProfile, method: Base.PsdMethod = Base.PsdMethod.PERIODOGRAM) -> tuple[PsdEstimate, RoadClass]:
        estimate = cls.estimate(profile, method)
        return estimate, RoadClass.classify(estimate.gd_fitted)
