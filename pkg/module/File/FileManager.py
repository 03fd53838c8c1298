import csv
import hashlib
import os
from typing import Any
from typing import Iterable

from base.Base import Base
from base.BaseError import LoadFailedError
from base.BaseError import MissingArtifactError

# CSV 与纯文本键值块的公共读写
class FileManager(Base):

    # 注释行前缀，用于在 CSV 前写入摘要块
    COMMENT: str = "#"

    # 与区域设置无关的浮点格式，repr 保证往返无损
    @classmethod
    def number(cls, v: Any) -> str:
        if isinstance(v, bool):
            return "1" if v else "0"
        if isinstance(v, int):
            return str(v)
        return repr(float(v))

    @classmethod
    def ensure_folder(cls, path: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok = True)

    @classmethod
    def digest(cls, path: str) -> str:
        sha256 = hashlib.sha256()
        with open(path, "rb") as reader:
            for chunk in iter(lambda: reader.read(1 << 20), b""):
                sha256.update(chunk)
        return sha256.hexdigest()

    # 同名扩展文件，如 ts.csv -> ts.meta.txt
    @classmethod
    def sidecar(cls, path: str, suffix: str) -> str:
        root, _ = os.path.splitext(path)
        return f"{root}.{suffix}"

    @classmethod
    def write_rows(cls, path: str, header: list[str], rows: Iterable[list[Any]], comments: dict[str, Any] = None) -> str:
        cls.ensure_folder(path)
        with open(path, "w", encoding = "utf-8", newline = "") as writer:
            for k, v in (comments or {}).items():
                writer.write(f"{__class__.COMMENT} {k} = {v}\n")
            csv_writer = csv.writer(writer, lineterminator = "\n")
            csv_writer.writerow(header)
            for row in rows:
                csv_writer.writerow([v if isinstance(v, str) else cls.number(v) for v in row])

        return path

    # 返回 (注释键值块, 行字典列表)，缺列或空文件视为损坏
    @classmethod
    def read_rows(cls, path: str, required: list[str]) -> tuple[dict[str, str], list[dict[str, str]]]:
        if not os.path.isfile(path):
            raise MissingArtifactError(f"file {path} does not exist")

        try:
            with open(path, "r", encoding = "utf-8-sig", newline = "") as reader:
                lines = reader.read().splitlines()
        except Exception as e:
            raise LoadFailedError(f"file {path} is not readable: {e}") from e

        comments = cls.parse_block([line[len(__class__.COMMENT):] for line in lines if line.startswith(__class__.COMMENT)])
        body = [line for line in lines if not line.startswith(__class__.COMMENT) and line.strip() != ""]
        if len(body) == 0:
            raise LoadFailedError(f"file {path} has no header")

        header = next(csv.reader(body[:1]))
        missing = [k for k in required if k not in header]
        if len(missing) > 0:
            raise LoadFailedError(f"file {path} lacks columns {', '.join(missing)}")

        rows = list(csv.DictReader(body))

        return comments, rows

    @classmethod
    def write_block(cls, path: str, data: dict[str, Any]) -> str:
        cls.ensure_folder(path)
        with open(path, "w", encoding = "utf-8") as writer:
            for k, v in data.items():
                writer.write(f"{k} = {v}\n")

        return path

    @classmethod
    def read_block(cls, path: str) -> dict[str, str]:
        if not os.path.isfile(path):
            raise MissingArtifactError(f"file {path} does not exist")

        with open(path, "r", encoding = "utf-8-sig") as reader:
            return cls.parse_block(reader.read().splitlines())

    @classmethod
    def parse_block(cls, lines: list[str]) -> dict[str, str]:
        data: dict[str, str] = {}
        for line in lines:
            if "=" not in line:
                continue
            k, v = line.split("=", 1)
            data[k.strip()] = v.strip()
        return data

    @classmethod
    def to_float(cls, path: str, row: dict[str, str], key: str) -> float:
        try:
            return float(row[key])
        except (KeyError, TypeError, ValueError) as e:
            raise LoadFailedError(f"file {path} has a malformed value in column {key}") from e
