import numpy as np

from base.Base import Base
from base.BaseError import LoadFailedError
from module.File.FileManager import FileManager
from module.Vehicle.ImuSeries import ImuSeries

class ImuFile(Base):

    # t_s,x_m,a_front_mps2
    HEADER: list[str] = ["t_s", "x_m", "a_front_mps2"]

    @classmethod
    def write(cls, path: str, imu: ImuSeries) -> str:
        return FileManager.write_rows(
            path,
            __class__.HEADER,
            zip(imu.times_s().tolist(), imu.positions_m.tolist(), imu.a_front.tolist()),
        )

    # 采样率与逐区间速度由时间和位置列反推
    @classmethod
    def read(cls, path: str) -> ImuSeries:
        _, rows = FileManager.read_rows(path, __class__.HEADER)
        if len(rows) < 2:
            raise LoadFailedError(f"IMU file {path} needs at least 2 rows")

        t = np.array([FileManager.to_float(path, row, "t_s") for row in rows])
        x = np.array([FileManager.to_float(path, row, "x_m") for row in rows])
        a = np.array([FileManager.to_float(path, row, "a_front_mps2") for row in rows])

        sample_rate_hz = float((t.size - 1) / (t[-1] - t[0]))
        v = np.diff(np.concatenate(((0.0, ), x))) * sample_rate_hz

        try:
            return ImuSeries(sample_rate_hz = sample_rate_hz, a_front = a, v_commanded = v, positions_m = x)
        except Exception as e:
            raise LoadFailedError(f"IMU file {path} is malformed: {e}") from e
