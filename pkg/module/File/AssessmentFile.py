from base.Base import Base
from module.Calibrate.AssessmentRow import AssessmentRow
from module.File.FileManager import FileManager

class AssessmentFile(Base):

    # v,gd_true,rep,gd_hat,pct_err,accept_rate,flags
    HEADER: list[str] = ["v", "gd_true", "rep", "gd_hat", "pct_err", "accept_rate", "flags"]

    # 后验直方图写在同名 .histograms.csv 中
    HISTOGRAM_SUFFIX: str = "histograms.csv"
    HISTOGRAM_HEADER: list[str] = ["v", "gd_true", "rep", "bin", "gd_lower", "gd_upper", "count"]

    @classmethod
    def write(cls, path: str, rows: list[AssessmentRow], gd_min: float, gd_max: float) -> str:
        FileManager.write_rows(
            path,
            __class__.HEADER,
            (
                [r.v, r.gd_true, r.rep, r.gd_hat, r.pct_err, r.accept_rate, ";".join(r.flags + ([r.error] if r.is_failed() else []))]
                for r in rows
            ),
        )

        def histogram_rows():
            for r in rows:
                bins = len(r.histogram)
                width = (gd_max - gd_min) / bins if bins > 0 else 0.0
                for k, count in enumerate(r.histogram):
                    yield [r.v, r.gd_true, r.rep, k, gd_min + k * width, gd_min + (k + 1) * width, count]

        FileManager.write_rows(FileManager.sidecar(path, __class__.HISTOGRAM_SUFFIX), __class__.HISTOGRAM_HEADER, histogram_rows())

        return path
