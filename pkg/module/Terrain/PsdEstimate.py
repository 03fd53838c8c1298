import dataclasses

import numpy as np

@dataclasses.dataclass(eq = False)
class PsdEstimate():

    frequencies: np.ndarray                                                     # 空间频率 cycles/m，严格递增且为正
    values: np.ndarray                                                          # 单边位移 PSD m^3
    gd_fitted: float                                                            # 斜率固定为 -2 的拟合值在 n0 处 × 10^6
    slope: float                                                                # 自由斜率的对数拟合指数
    df: float = 0.0                                                             # 频率分辨率 cycles/m

    # 对频率积分，即信号方差
    def integrated_power(self) -> float:
        return float(np.sum(self.values) * self.df)

    def peak_frequency(self) -> float:
        return float(self.frequencies[int(np.argmax(self.values))])