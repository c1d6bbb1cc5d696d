"""
This module provides the CertifierConfig class to read the certifier configuration.
"""

import yaml

from constants import CONFIG_FILE, set_bernoulli_cache_file, set_golden_file, set_tunable
from utils.base import Loggable

# (section, key) in config.yaml -> tunable name in constants.TUNABLES
_TUNABLE_KEYS = {
    ("precision", "valuation_guard"): "valuation_guard",
    ("precision", "truncation_guard"): "truncation_guard",
    ("precision", "max_retries"): "max_retries",
    ("direct", "m_max"): "direct_m_max",
    ("partial_fractions", "dense_check_max_degree"): "dense_check_max_degree",
}


class CertifierConfig(Loggable):
    """Interact with the certifier configuration.

    Numeric tunables and cache locations are pushed into `constants` by
    apply(); the growth and probe settings are read through get().
    """

    def __init__(self, config_file=CONFIG_FILE):
        super().__init__()
        self.config_file = config_file
        self.config = {}
        try:
            with open(config_file, "r", encoding="utf8") as stream:
                self.config = yaml.safe_load(stream) or {}
        except IOError:
            self.logger.warning(
                f"Unable to open configuration file {config_file!r}, using defaults"
            )

    def get(self, section, key, default=None):
        return self.config.get(section, {}).get(key, default)

    def apply(self):
        """Push tunables and cache paths from the file into the running process."""
        for (section, key), name in _TUNABLE_KEYS.items():
            value = self.get(section, key)
            if value is not None:
                set_tunable(name, value)
                self.logger.debug(f"Tunable {name} = {value}")
        if self.get("cache", "bernoulli_file"):
            set_bernoulli_cache_file(self.get("cache", "bernoulli_file"))
        if self.get("cache", "golden_file"):
            set_golden_file(self.get("cache", "golden_file"))
        return self
