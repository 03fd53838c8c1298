import numpy as np

from base.Base import Base
from base.BaseError import LoadFailedError
from module.File.FileManager import FileManager
from module.Terrain.RoadProfile import RoadProfile

class ProfileFile(Base):

    # x_m,height_m
    HEADER: list[str] = ["x_m", "height_m"]

    @classmethod
    def write(cls, path: str, profile: RoadProfile) -> str:
        return FileManager.write_rows(
            path,
            __class__.HEADER,
            zip(profile.positions().tolist(), profile.heights_m.tolist()),
        )

    # 间距由首末位置反推
    @classmethod
    def read(cls, path: str) -> RoadProfile:
        _, rows = FileManager.read_rows(path, __class__.HEADER)
        if len(rows) < 2:
            raise LoadFailedError(f"profile file {path} needs at least 2 rows")

        x = np.array([FileManager.to_float(path, row, "x_m") for row in rows])
        heights = np.array([FileManager.to_float(path, row, "height_m") for row in rows])
        spacing = float((x[-1] - x[0]) / (x.size - 1))

        try:
            return RoadProfile(heights_m = heights, spacing_m = spacing)
        except Exception as e:
            raise LoadFailedError(f"profile file {path} is malformed: {e}") from e
