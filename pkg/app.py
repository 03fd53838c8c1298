import os
import sys
from types import TracebackType

from base.CLIManager import CLIManager
from base.LogManager import LogManager
from module.Config import Config
from module.Localizer.Localizer import Localizer

def excepthook(exc_type: type[BaseException], exc_value: BaseException, exc_traceback: TracebackType) -> None:
    if isinstance(exc_value, KeyboardInterrupt):
        sys.exit(130)

    LogManager.get().error(Localizer.get().log_crash, exc_value)
    sys.exit(1)

def load_version() -> str:
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "version.txt")
    try:
        with open(path, "r", encoding = "utf-8-sig") as reader:
            return reader.read().strip()
    except Exception:
        return "v0.0.0"

if __name__ == "__main__":
    # 捕获全局异常
    sys.excepthook = lambda exc_type, exc_value, exc_traceback: excepthook(exc_type, exc_value, exc_traceback)

    # 设置工作目录
    sys.path.append(os.path.dirname(os.path.abspath(sys.argv[0])))

    # 载入默认配置
    config = Config().load()

    # 加载版本号
    version = load_version()

    # 设置应用语言
    Localizer.set_app_language(config.app_language)

    # 打印日志
    LogManager.get().info(f"TerraCal {version}")
    LogManager.get().info(Localizer.get().log_expert_mode) if LogManager.get().is_expert_mode() else None

    # 处理启动参数
    CLIManager.get().set_version(version)
    sys.exit(CLIManager.get().run(sys.argv[1:]))
