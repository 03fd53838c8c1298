from base.Base import Base
from module.Calibrate.Posterior import Posterior
from module.File.FileManager import FileManager

class PosteriorFile(Base):

    # 摘要块以注释行写在样本表之前
    HEADER: list[str] = ["index", "gd", "lambda_obs"]

    @classmethod
    def write(cls, path: str, posterior: Posterior) -> str:
        lambdas = posterior.lambda_samples
        summary = {
            k: (";".join(str(v) for v in value) if isinstance(value, list) else FileManager.number(value))
            for k, value in posterior.summary().items()
        }
        return FileManager.write_rows(
            path,
            __class__.HEADER,
            (
                [i, float(gd), float(lambdas[i]) if lambdas is not None else float("nan")]
                for i, gd in enumerate(posterior.samples)
            ),
            comments = summary,
        )
