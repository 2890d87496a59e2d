from __future__ import annotations

import pytest
from hypothesis import settings

from rabi_square.core import ModelParams
from rabi_square.fock import FockSpace

settings.register_profile("ci", derandomize=True, max_examples=25,
                          deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def params_a() -> ModelParams:
    """Staggered-dominant reference point."""
    return ModelParams.from_g(0.0, 50.0, 0.05, 0.02)


@pytest.fixture(scope="session")
def params_b() -> ModelParams:
    """Diagonal hopping strong enough to favor the paired pattern."""
    return ModelParams.from_g(0.0, 50.0, 0.05, 0.07)


@pytest.fixture(scope="session")
def fock3() -> FockSpace:
    return FockSpace(3)


@pytest.fixture(scope="session")
def fock5() -> FockSpace:
    return FockSpace(5)


@pytest.fixture
def report(capsys):
    """One visible pass/fail line per acceptance criterion."""

    def emit(name: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")

    return emit
