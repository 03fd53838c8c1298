from base.BaseLanguage import BaseLanguage
from module.Localizer.LocalizerZH import LocalizerZH
from module.Localizer.LocalizerEN import LocalizerEN

class Localizer():

    APP_LANGUAGE: BaseLanguage.Enum = BaseLanguage.Enum.EN

    @classmethod
    def get(cls) -> LocalizerZH | LocalizerEN:
        if cls.APP_LANGUAGE == BaseLanguage.Enum.ZH:
            return LocalizerZH
        else:
            return LocalizerEN

    @classmethod
    def get_app_language(cls) -> BaseLanguage.Enum:
        return cls.APP_LANGUAGE

    @classmethod
    def set_app_language(cls, app_language: str) -> None:
        cls.APP_LANGUAGE = BaseLanguage.parse(app_language)
