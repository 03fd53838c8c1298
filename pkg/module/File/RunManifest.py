import dataclasses
import json
import os
import time
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from base.BaseError import LoadFailedError
from base.BaseError import MissingArtifactError
from module.File.FileManager import FileManager

@dataclasses.dataclass
class RunManifest():

    command: str = ""                                                           # 子命令
    version: str = ""                                                           # 工具版本
    argv: list[str] = dataclasses.field(default_factory = list)                 # 命令行参数
    config: dict[str, Any] = dataclasses.field(default_factory = dict)          # 生效配置快照
    seeds: dict[str, int] = dataclasses.field(default_factory = dict)           # 随机种子
    inputs: dict[str, str] = dataclasses.field(default_factory = dict)          # 输入文件 sha256
    outputs: dict[str, str] = dataclasses.field(default_factory = dict)         # 输出文件 sha256
    timings: dict[str, float] = dataclasses.field(default_factory = dict)       # 各阶段耗时 s
    summary: dict[str, Any] = dataclasses.field(default_factory = dict)         # 结果摘要

    # 清单文件后缀
    SUFFIX = "manifest.json"

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        class_fields = {f.name for f in dataclasses.fields(cls)}
        filtered_data = {k: v for k, v in data.items() if k in class_fields}
        return cls(**filtered_data)

    def asdict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def add_input(self, path: str) -> None:
        self.inputs[path] = FileManager.digest(path)

    def add_output(self, path: str) -> None:
        self.outputs[path] = FileManager.digest(path)

    # 计时上下文：with manifest.timer("simulate"): ...
    def timer(self, stage: str) -> "RunManifest.Timer":
        return __class__.Timer(self, stage)

    class Timer():

        def __init__(self, manifest: "RunManifest", stage: str) -> None:
            self.manifest = manifest
            self.stage = stage

        def __enter__(self) -> None:
            self.start = time.perf_counter()

        def __exit__(self, *args: Any) -> None:
            self.manifest.timings[self.stage] = self.manifest.timings.get(self.stage, 0.0) + time.perf_counter() - self.start

    @classmethod
    def path_for(cls, output: str) -> str:
        return FileManager.sidecar(output, __class__.SUFFIX)

    def save(self, path: str) -> str:
        FileManager.ensure_folder(path)
        with open(path, "w", encoding = "utf-8") as writer:
            json.dump(self.asdict(), writer, indent = 4, ensure_ascii = False, default = str)

        return path

    @classmethod
    def load(cls, path: str) -> Self:
        if not os.path.isfile(path):
            raise MissingArtifactError(f"manifest {path} does not exist")

        try:
            with open(path, "r", encoding = "utf-8-sig") as reader:
                return cls.from_dict(json.load(reader))
        except Exception as e:
            raise LoadFailedError(f"manifest {path} is not readable: {e}") from e
