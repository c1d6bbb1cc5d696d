"""
Constants for the project.
"""

import os

LOGGER_NAME = "zeta2cert"
CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")

# Environment variables that override the cache locations.
CACHE_ENV_VAR = "ZETA2CERT_CACHE"
GOLDEN_ENV_VAR = "ZETA2CERT_GOLDEN"

# Global cache locations - can be modified at runtime
BERNOULLI_CACHE_FILE = os.path.join(".cache", "bernoulli.tsv")
GOLDEN_FILE = os.path.join(".cache", "zeta_golden.txt")

# Numeric tunables, overridden from config.yaml at startup.
TUNABLES = {
    "valuation_guard": 32,
    "truncation_guard": 8,
    "max_retries": 3,
    "direct_m_max": 20,
    "dense_check_max_degree": 200,
}


def set_bernoulli_cache_file(path: str):
    """Set the global Bernoulli cache file."""
    global BERNOULLI_CACHE_FILE
    BERNOULLI_CACHE_FILE = path


def get_bernoulli_cache_file() -> str:
    """Get the current Bernoulli cache file, honouring the environment override."""
    return os.environ.get(CACHE_ENV_VAR, BERNOULLI_CACHE_FILE)


def set_golden_file(path: str):
    """Set the global golden-value file."""
    global GOLDEN_FILE
    GOLDEN_FILE = path


def get_golden_file() -> str:
    """Get the current golden-value file, honouring the environment override."""
    return os.environ.get(GOLDEN_ENV_VAR, GOLDEN_FILE)


def set_tunable(name: str, value: int):
    """Set a numeric tunable."""
    if name not in TUNABLES:
        raise KeyError(f"Unknown tunable: {name}")
    TUNABLES[name] = int(value)


def get_tunable(name: str) -> int:
    """Get a numeric tunable."""
    return TUNABLES[name]
