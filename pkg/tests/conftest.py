"""Shared fixtures: compile every JIT kernel once before timed tests."""
import pytest

from palk.engine import (
    CenterConfig,
    Parity,
    Variant,
    dp_oracle,
    k_differences_scan,
    string_iterations,
)
from palk.expected import ExpectedConfig, expected_iterations_exact, expected_iterations_mc
from palk.lce import build_lce
from palk.symbols import SymbolString


@pytest.fixture(scope="session", autouse=True)
def jit_warmup():
    """Touch each kernel so compile time stays out of runtime assertions."""
    s = SymbolString.of((0, 1, 0, 0, 1, 0))
    oracle = build_lce(s)
    for v in Variant:
        k_differences_scan(oracle, CenterConfig.of(6, 3, Parity.EVEN), 2, v,
                           want_script=True)
        string_iterations(oracle, 2, v)
        expected_iterations_exact(ExpectedConfig(2, 2, 1, variant=v))
        expected_iterations_mc(ExpectedConfig(3, 2, 1, variant=v, samples=4))
    dp_oracle(s, s)
