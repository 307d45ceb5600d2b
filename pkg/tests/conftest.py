from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import settings

from corrspec.seqgen import field_for, validate_params
from corrspec.spectrum import full_spectrum, rank_data, sums_sweep

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

SMALL = [(5, 1, 1), (13, 1, 1)]
ALL_SETS = [(5, 1, 1), (13, 1, 1), (5, 3, 3), (5, 3, 1)]


@lru_cache(maxsize=None)
def setup(p: int, m: int, e: int):
    params = validate_params(p, m, e)
    return params, field_for(params)


@lru_cache(maxsize=None)
def sweep(p: int, m: int, e: int):
    """Exact sums over all shifts, shared across test modules."""
    params, field = setup(p, m, e)
    return sums_sweep(params, field)


@lru_cache(maxsize=None)
def ranks(p: int, m: int, e: int):
    params, field = setup(p, m, e)
    return rank_data(params, field)


@lru_cache(maxsize=None)
def spectrum(p: int, m: int, e: int, method: str):
    params, field = setup(p, m, e)
    return full_spectrum(params, field, method)


@pytest.fixture(scope="session")
def gf25():
    return setup(5, 1, 1)[1]


ACCEPTANCE_LINES: dict[tuple[int, str], str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
