import os

from app.core.config import Settings, settings


def test_settings_instance():
    assert isinstance(settings, Settings)


def test_settings_log_file():
    assert settings.LOG_FILE == os.getenv("LISTDEC_LOG_FILE", "log/listdecode.log")


def test_settings_numeric_values():
    assert isinstance(settings.LOOKUP_MAX_ORDER, int)
    assert isinstance(settings.GS_MAX_MULTIPLICITY, int)
    assert settings.GS_MAX_MULTIPLICITY >= 1
    assert settings.ENUMERATION_BUDGET > 0


def test_settings_default_seed():
    assert settings.DEFAULT_SEED == int(os.getenv("LISTDEC_DEFAULT_SEED", "0"))
