import math

from base.Base import Base
from base.BaseError import LoadFailedError
from module.File.FileManager import FileManager
from module.Loop.LoopRecord import LoopRecord

class TraceFile(Base):

    # 前八列为固定格式，其后附加记录类型与缓冲区窗口
    HEADER: list[str] = [
        "t_s", "x_m", "v_cmd_mps", "gd_hat", "gd_std", "mode", "f_obs", "gd_true",
        "kind", "window_start", "window_end", "x_window_start_m",
    ]

    @classmethod
    def write(cls, path: str, trace: list[LoopRecord]) -> str:
        return FileManager.write_rows(
            path,
            __class__.HEADER,
            (
                [
                    r.t, r.x, r.v_cmd, r.gd_hat, r.gd_std, str(r.mode), r.f_obs, r.gd_true,
                    str(r.kind), r.window_start, r.window_end, r.x_window_start,
                ]
                for r in trace
            ),
        )

    @classmethod
    def read(cls, path: str) -> list[LoopRecord]:
        _, rows = FileManager.read_rows(path, __class__.HEADER[:8])

        trace: list[LoopRecord] = []
        try:
            for row in rows:
                trace.append(
                    LoopRecord(
                        kind = Base.RecordKind(row.get("kind") or Base.RecordKind.CALIBRATION),
                        t = float(row["t_s"]),
                        x = float(row["x_m"]),
                        v_cmd = float(row["v_cmd_mps"]),
                        gd_hat = float(row["gd_hat"]),
                        gd_std = float(row["gd_std"]),
                        mode = Base.ControlMode(row["mode"]),
                        f_obs = float(row["f_obs"]),
                        gd_true = float(row["gd_true"]),
                        window_start = int(row.get("window_start") or -1),
                        window_end = int(row.get("window_end") or -1),
                        x_window_start = float(row.get("x_window_start_m") or math.nan),
                    )
                )
        except Exception as e:
            raise LoadFailedError(f"trace file {path} is malformed: {e}") from e

        return trace
