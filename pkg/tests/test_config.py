import logging

import pytest

from fgdist import config
from fgdist.config import Settings, configure_logging, get_settings
from fgdist.errors import InputError


class TestSettings:
    """Test environment-driven settings."""

    def test_defaults(self, monkeypatch):
        """Test defaults come from the module constants."""
        monkeypatch.setattr(config, "DEFAULT_FULL_TABLE_LIMIT", 12)
        settings = Settings.from_env({})

        assert settings.full_table_limit == 12
        assert settings.full_check_dimension == config.DEFAULT_FULL_CHECK_DIMENSION
        assert settings.log_level == "WARNING"
        assert settings.threads >= 1
        assert settings.check_termination is True

    def test_from_environment(self):
        """Test FGDIST_* variables are read and converted."""
        settings = Settings.from_env({
            "FGDIST_THREADS": "3",
            "FGDIST_LOG_LEVEL": "debug",
            "FGDIST_FULL_CHECK_DIMENSION": "4",
            "FGDIST_CHECK_TERMINATION": "false",
        })

        assert settings.threads == 3
        assert settings.log_level == "DEBUG"
        assert settings.full_check_dimension == 4
        assert settings.check_termination is False

    def test_invalid_values(self):
        """Test invalid variables become input errors."""
        test_cases = [
            {"FGDIST_THREADS": "0"},
            {"FGDIST_THREADS": "many"},
            {"FGDIST_LOG_LEVEL": "LOUD"},
        ]
        for environ in test_cases:
            with pytest.raises(InputError):
                Settings.from_env(environ)

    def test_cached_accessor(self, monkeypatch):
        """Test get_settings reads the process environment once."""
        get_settings.cache_clear()
        monkeypatch.setenv("FGDIST_THREADS", "2")
        try:
            assert get_settings().threads == 2
            assert get_settings() is get_settings()
        finally:
            get_settings.cache_clear()

    def test_configure_logging(self, monkeypatch):
        """Test configure_logging passes the level to basicConfig."""
        calls = {}
        monkeypatch.setattr(logging, "basicConfig", lambda **kwargs: calls.update(kwargs))
        configure_logging("info")

        assert calls["level"] == "INFO"
        assert calls["format"] == config.LOG_FORMAT
