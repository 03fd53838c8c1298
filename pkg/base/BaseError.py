from base.Base import Base

class BaseError(Exception):

    # 对应的命令行退出码
    EXIT_CODE: Base.ExitCode = Base.ExitCode.VALIDATION

    def get_exit_code(self) -> Base.ExitCode:
        return type(self).EXIT_CODE

# 参数校验
class InvalidSpecError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

class InvalidArgumentError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

class OutOfRangeError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

class InsufficientDataError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

class InsufficientTrackError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

# 文件
class MissingArtifactError(BaseError):

    EXIT_CODE = Base.ExitCode.MISSING_ARTIFACT

class LoadFailedError(BaseError):

    EXIT_CODE = Base.ExitCode.MISSING_ARTIFACT

# 数值计算
class IntegrationDivergedError(BaseError):

    EXIT_CODE = Base.ExitCode.NUMERICAL

    def __init__(self, message: str, step: int) -> None:
        super().__init__(message)
        self.step = step

class UnstableStepError(BaseError):

    EXIT_CODE = Base.ExitCode.VALIDATION

    def __init__(self, message: str, suggested_dt: float) -> None:
        super().__init__(message)
        self.suggested_dt = suggested_dt

class TrainingFailedError(BaseError):

    EXIT_CODE = Base.ExitCode.NUMERICAL

    def __init__(self, message: str, condition_number: float) -> None:
        super().__init__(message)
        self.condition_number = condition_number

class CalibrationDegenerateError(BaseError):

    EXIT_CODE = Base.ExitCode.NUMERICAL
# 第三方数值库抛出的异常统一归入该类
class NumericalError(BaseError):

    EXIT_CODE = Base.ExitCode.NUMERICAL

class ReplayMismatchError(BaseError):

    EXIT_CODE = Base.ExitCode.NUMERICAL
