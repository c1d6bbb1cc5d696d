import os

import constants
from certifier_config import CertifierConfig
from constants import get_bernoulli_cache_file, get_golden_file, get_tunable
from utils.setup_session import SessionSetup


def test_shipped_configuration_matches_the_defaults():
    config = CertifierConfig().apply()
    assert config.get("precision", "valuation_guard") == 32
    assert get_tunable("truncation_guard") == 8
    assert get_bernoulli_cache_file() == os.path.join(".cache", "bernoulli.tsv")


def test_custom_configuration(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "precision:\n  valuation_guard: 48\n"
        "cache:\n  golden_file: /tmp/golden.txt\n"
        "growth:\n  lcm_tolerance: 0.2\n"
    )
    config = CertifierConfig(str(path)).apply()
    assert get_tunable("valuation_guard") == 48
    assert get_tunable("max_retries") == constants.TUNABLES["max_retries"]
    assert get_golden_file() == "/tmp/golden.txt"
    assert config.get("growth", "lcm_tolerance") == 0.2
    assert config.get("probe", "sample_count", 64) == 64


def test_missing_configuration_falls_back_to_defaults(tmp_path, caplog):
    config = CertifierConfig(str(tmp_path / "absent.yaml")).apply()
    assert config.config == {}
    assert get_tunable("valuation_guard") == 32
    assert "Unable to open configuration file" in caplog.text


def test_session_directory(tmp_path):
    session = SessionSetup("verify", custom_session_name="nightly", root=str(tmp_path))
    assert session.session_name.startswith("nightly_")
    assert os.path.isdir(session.session_reports_dir)
    assert session.session_reports_dir.startswith(str(tmp_path / ".sessions" / "verify"))
