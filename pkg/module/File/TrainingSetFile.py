from base.Base import Base
from base.BaseError import LoadFailedError
from module.Design.DesignPoint import DesignPoint
from module.Design.PriorBox import PriorBox
from module.Design.TrainingSet import TrainingSet
from module.File.FileManager import FileManager
from module.Vehicle.NoiseSpec import NoiseSpec

class TrainingSetFile(Base):

    # index,v_mps,gd,f,seed
    HEADER: list[str] = ["index", "v_mps", "gd", "f", "seed"]

    # 元数据写在同名 .meta.txt 中
    META_SUFFIX: str = "meta.txt"

    @classmethod
    def write(cls, path: str, ts: TrainingSet) -> str:
        FileManager.write_rows(
            path,
            __class__.HEADER,
            ([p.index, p.v, p.gd, p.f, p.seed] for p in ts.points),
        )

        meta = {
            **{f"prior.{k}": FileManager.number(v) for k, v in ts.prior.asdict().items()},
            "noise.enabled": FileManager.number(ts.noise.enabled),
            "noise.sigma": FileManager.number(ts.noise.sigma),
            "noise.seed": FileManager.number(ts.noise.seed),
            **{f"provenance.{k}": v for k, v in ts.provenance.items()},
        }
        FileManager.write_block(FileManager.sidecar(path, __class__.META_SUFFIX), meta)

        return path

    @classmethod
    def read(cls, path: str) -> TrainingSet:
        _, rows = FileManager.read_rows(path, __class__.HEADER)
        meta = FileManager.read_block(FileManager.sidecar(path, __class__.META_SUFFIX))

        try:
            points = [
                DesignPoint(
                    index = int(row["index"]),
                    v = float(row["v_mps"]),
                    gd = float(row["gd"]),
                    f = float(row["f"]),
                    seed = int(row["seed"]),
                )
                for row in rows
            ]
            prior = PriorBox.from_dict({k[len("prior."):]: v for k, v in meta.items() if k.startswith("prior.")})
            noise = NoiseSpec(
                enabled = meta.get("noise.enabled", "0") == "1",
                sigma = float(meta.get("noise.sigma", "1.0")),
                seed = int(meta.get("noise.seed", "0")),
            )
            provenance = {k[len("provenance."):]: v for k, v in meta.items() if k.startswith("provenance.")}

            return TrainingSet(points = points, prior = prior, noise = noise, provenance = provenance)
        except LoadFailedError:
            raise
        except Exception as e:
            raise LoadFailedError(f"training set {path} is malformed: {e}") from e
