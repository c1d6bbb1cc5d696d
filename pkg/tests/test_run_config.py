from fractions import Fraction

import pytest
from pydantic import ValidationError

from run_config import COMMANDS, SUITES, RunConfig


def test_known_commands_and_suites():
    assert COMMANDS == ("bernoulli", "zeta", "linform", "verify", "certificate")
    assert "delta-probe" in SUITES
    assert len(SUITES) == 14


def test_defaults():
    cfg = RunConfig(command="verify", suite="floor")
    assert cfg.s == 0
    assert cfg.delta == 0
    assert cfg.kind == "S"
    assert cfg.output_format == "json"
    assert cfg.seed == 0


@pytest.mark.parametrize(
    "params",
    [
        {"command": "verify"},
        {"command": "certificate"},
        {"command": "zeta"},
        {"command": "bernoulli"},
        {"command": "linform"},
        {"command": "verify", "suite": "nope"},
        {"command": "verify", "suite": "floor", "delta": 2},
        {"command": "verify", "suite": "floor", "s": -1},
        {"command": "verify", "suite": "floor", "m": 1},
        {"command": "verify", "suite": "floor", "precision": 0},
        {"command": "verify", "suite": "floor", "output_format": "xml"},
        {"command": "verify", "suite": "floor", "unknown": 1},
        {"command": "certificate", "m_list": [2, 1]},
        {"command": "zeta", "j": 3, "x": "1/3"},
        {"command": "zeta", "j": 3, "x": "1/2"},
        {"command": "zeta", "j": 3, "x": "one"},
    ],
)
def test_invalid_parameters(params):
    with pytest.raises(ValidationError):
        RunConfig(**params)


def test_x_in_the_hurwitz_domain():
    cfg = RunConfig(command="zeta", j=3, x="3/8")
    assert cfg.x_rational == Fraction(3, 8)


def test_resolved_n():
    assert RunConfig(command="linform", n=5).resolved_n() == 5
    assert RunConfig(command="linform", m=3).resolved_n() == 7
    assert RunConfig(command="verify", suite="floor").resolved_n(11) == 11


def test_config_is_frozen():
    cfg = RunConfig(command="verify", suite="floor")
    with pytest.raises(ValidationError):
        cfg.s = 3
