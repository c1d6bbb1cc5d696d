import logging

import pytest

import constants
import numcore
from constants import LOGGER_NAME


@pytest.fixture(autouse=True)
def isolated_globals(monkeypatch):
    """Restore tunables, cache locations and the default Bernoulli cache after each test."""
    monkeypatch.setattr(constants, "TUNABLES", dict(constants.TUNABLES))
    monkeypatch.setattr(constants, "BERNOULLI_CACHE_FILE", constants.BERNOULLI_CACHE_FILE)
    monkeypatch.setattr(constants, "GOLDEN_FILE", constants.GOLDEN_FILE)
    monkeypatch.setattr(numcore, "_default_cache", numcore._default_cache)
    monkeypatch.delenv(constants.CACHE_ENV_VAR, raising=False)
    monkeypatch.delenv(constants.GOLDEN_ENV_VAR, raising=False)
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
