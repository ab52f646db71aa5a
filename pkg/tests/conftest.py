"""Shared fixtures for the test suite."""

import math
import os
from pathlib import Path

import numpy as np
import pytest

from zeta_large_gaps.config import Settings, reset_settings
from zeta_large_gaps.core.functional import DEGREE_SIX_MOLLIFIER, MollifierSpec, ThetaParam

DATA_DIR = Path(__file__).parent / "data"


def gram_like_ordinates(count: int) -> np.ndarray:
    """
    Ordinates solving main(gamma_n) + 7/8 = n - 1/2 for n = 1..count.

    These sit where the smooth counting function places zeros, so the
    unfolded gaps are close to 1 and the counting residual is known exactly.
    """
    n = np.arange(1, count + 1, dtype=float)
    target = n - 0.5 - 0.875
    u = math.e * (target + 3.0)
    for _ in range(60):
        u = u - (u * np.log(u) - u - target) / np.log(u)
    return 2 * math.pi * u


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Drop cached settings and ZLG_* variables around every test."""
    for key in list(os.environ):
        if key.upper().startswith("ZLG_"):
            monkeypatch.delenv(key, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def settings():
    """Default settings, ignoring any .env file."""
    return Settings(_env_file=None)


@pytest.fixture
def half_theta():
    return ThetaParam()


@pytest.fixture
def degree_six_mollifier():
    """The degree-six mollifier 1000x^2 - 9332x^3 + 30134x^4 - 40475x^5 + 19292x^6."""
    return MollifierSpec.from_sequence(DEGREE_SIX_MOLLIFIER)


@pytest.fixture
def first_zeros_path():
    return DATA_DIR / "zeros_first10.txt"


@pytest.fixture
def write_table(tmp_path):
    """Write lines to a temporary zero table and return its path."""

    def _write(lines, name="zeros.txt"):
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def synthetic_zeros_path(tmp_path):
    """A 10^4-ordinate table at the positions of the smooth counting function."""
    path = tmp_path / "synthetic_zeros.txt"
    ordinates = gram_like_ordinates(10_000)
    path.write_text("\n".join(repr(float(g)) for g in ordinates) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def gram_like():
    """The gram_like_ordinates generator."""
    return gram_like_ordinates


@pytest.fixture(scope="session")
def riemann_zeros_path(tmp_path_factory):
    """The first 500 nontrivial zero ordinates, computed with mpmath and written as a table."""
    mpmath = pytest.importorskip("mpmath")
    with mpmath.workdps(20):
        ordinates = [float(mpmath.zetazero(n).imag) for n in range(1, 501)]
    path = tmp_path_factory.mktemp("zeros") / "zeros_first500.txt"
    path.write_text("\n".join(repr(g) for g in ordinates) + "\n", encoding="utf-8")
    return path
