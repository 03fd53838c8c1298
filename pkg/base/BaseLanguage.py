try:
    from enum import StrEnum
except ImportError:
    from enum import Enum as _Enum

    class StrEnum(str, _Enum):
        __str__ = str.__str__
        __format__ = str.__format__

class BaseLanguage():

    class Enum(StrEnum):
        ZH = "ZH"                                          # 中文 (Chinese)
        EN = "EN"                                          # 英文 (English)

    LANGUAGE_NAMES: dict[Enum, dict[str, str]] = {
        Enum.ZH: {"zh": "中文", "en": "Chinese"},
        Enum.EN: {"zh": "英文", "en": "English"},
    }

    # 未知语言回退为英文
    @classmethod
    def parse(cls, value: str) -> Enum:
        try:
            return cls.Enum(str(value).upper())
        except ValueError:
            return cls.Enum.EN

    @classmethod
    def get_languages(cls) -> list[str]:
        return list(cls.LANGUAGE_NAMES.keys())
