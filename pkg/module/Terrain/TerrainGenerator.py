import math

import numpy as np
import scipy.fft

from base.Base import Base
from base.BaseError import InvalidArgumentError
from module.Terrain.RoadProfile import RoadProfile
from module.Terrain.RoadSpec import RoadSpec

class TerrainGenerator(Base):

    def __init__(self) -> None:
        super().__init__()

    # 谐波叠加法：h(x) = Σ sqrt(2·Gd(n_i)·Δn)·cos(2π·n_i·x + φ_i)，相位独立均匀分布
    # 频率取周期为 N·dx 的等间距网格与频带的交集，用逆 FFT 求和
    @classmethod
    def generate(cls, spec: RoadSpec) -> RoadProfile:
        count = math.ceil(spec.length_m / spec.spacing_m - 1e-9) + 1
        dn = 1.0 / (count * spec.spacing_m)

        # 频带内的谐波编号
        k = np.arange(1, count // 2 + 1)
        n = k * dn
        mask = (n >= spec.n_min) & (n <= spec.n_max)
        k, n = k[mask], n[mask]

        rng = np.random.default_rng(spec.seed)
        phases = rng.uniform(0.0, 2.0 * math.pi, size = k.size)
        amplitudes = np.sqrt(2.0 * spec.psd_at(n) * dn)

        coefficients = np.zeros(count, dtype = np.complex128)
        coefficients[k] = amplitudes * np.exp(1j * phases)

        # Nyquist 处的谐波只有实部可以表示
        if count % 2 == 0 and k.size > 0 and k[-1] == count // 2:
            coefficients[k[-1]] = amplitudes[-1] * math.cos(phases[-1])

        heights = count * np.real(scipy.fft.ifft(coefficients))

        return RoadProfile(heights_m = heights, spacing_m = spec.spacing_m, spec = spec)

    # 依次拼接，后一段整体平移使接缝处高程连续
    @classmethod
    def concat(cls, profiles: list[RoadProfile]) -> RoadProfile:
        if len(profiles) == 0:
            raise InvalidArgumentError("at least one profile is required")

        spacing = profiles[0].spacing_m
        if any(not math.isclose(v.spacing_m, spacing, rel_tol = 1e-12) for v in profiles):
            raise InvalidArgumentError("all segments must share the same spacing")

        if len(profiles) == 1:
            return profiles[0]

        chunks: list[np.ndarray] = [profiles[0].heights_m]
        last = profiles[0].heights_m[-1]
        for profile in profiles[1:]:
            shifted = profile.heights_m + (last - profile.heights_m[0])
            chunks.append(shifted[1:])
            last = shifted[-1]

        return RoadProfile(heights_m = np.concatenate(chunks), spacing_m = spacing)