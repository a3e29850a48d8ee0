"""Shared fixtures: preset sheets used across the suites."""

import pytest

from src.mechanics.sheet import sheet_preset

MM = 1e-3


@pytest.fixture
def sheet_a():
    return sheet_preset("A")


@pytest.fixture
def sheet_a5():
    """Sheet A with five discrete ribbons (stations 1/3, 2/3, 1)."""
    return sheet_preset("A", n_discrete=5)


@pytest.fixture(params=["A", "B", "C", "D"])
def any_preset(request):
    return sheet_preset(request.param)
