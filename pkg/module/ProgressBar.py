from types import TracebackType
from typing import Any
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

from rich.progress import BarColumn
from rich.progress import MofNCompleteColumn
from rich.progress import Progress
from rich.progress import ProgressColumn
from rich.progress import SpinnerColumn
from rich.progress import TaskID
from rich.progress import TaskProgressColumn
from rich.progress import TextColumn
from rich.progress import TimeElapsedColumn
from rich.progress import TimeRemainingColumn

from base.LogManager import LogManager

# 仿真、训练、网格评估等批处理共用的进度条，多个实例共享同一个 rich Progress
class ProgressBar():

    # 类变量
    progress: Progress | None = None

    def __init__(self, transient: bool) -> None:
        super().__init__()

        # 初始化
        self.tasks: dict[TaskID, dict[str, Any]] = {}
        self.transient: bool = transient

    @classmethod
    def columns(cls) -> list[ProgressColumn | str]:
        return [
            SpinnerColumn(),
            TextColumn("{task.description}"),
            BarColumn(bar_width = None),
            TaskProgressColumn(),
            MofNCompleteColumn(),
            "•",
            TimeElapsedColumn(),
            "/",
            TimeRemainingColumn(),
        ]

    def __enter__(self) -> Self:
        if not isinstance(__class__.progress, Progress):
            __class__.progress = Progress(
                *__class__.columns(),
                console = LogManager.get().console,
                transient = self.transient,
            )
            __class__.progress.start()

        return self

    def __exit__(self, exc_type: BaseException, exc_val: BaseException, exc_tb: TracebackType) -> None:
        if __class__.progress is None:
            return None

        for id, attr in self.tasks.items():
            attr["running"] = False
            __class__.progress.stop_task(id)
            __class__.progress.remove_task(id) if self.transient == True else None

        # 所有任务结束后关闭
        finished: set[TaskID] = {k for k, v in self.tasks.items() if v.get("running") == False}
        if all(v in finished for v in __class__.progress.task_ids):
            __class__.progress.stop()
            __class__.progress = None

    # total 为空时显示为不定长任务
    def new(self, description: str = "", total: int = None) -> TaskID:
        if __class__.progress is None:
            return None
        else:
            id = __class__.progress.add_task(description, total = total)
            self.tasks[id] = {
                "running": True,
            }
            return id

    def update(self, id: TaskID, *, total: int = None, advance: int = None, completed: int = None) -> None:
        if __class__.progress is None or id is None:
            pass
        else:
            __class__.progress.update(id, total = total, advance = advance, completed = completed)
