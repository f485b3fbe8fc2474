from __future__ import annotations

import pytest

from clusterbody.rootsys import cartan, word_data


def case(series: str, n: int, word):
    cd = cartan(series, n)
    return word_data(word, cd, require_reduced=True), cd


@pytest.fixture(scope="session")
def sl3():
    return case("A", 2, (1, 2, 1))


@pytest.fixture(scope="session")
def sl3p():
    return case("A", 2, (2, 1, 2))


@pytest.fixture(scope="session")
def sl4():
    return case("A", 3, (1, 2, 1, 3, 2, 1))


@pytest.fixture(scope="session")
def sl4p():
    return case("A", 3, (2, 1, 2, 3, 2, 1))


@pytest.fixture(scope="session")
def b2():
    return case("B", 2, (1, 2, 1, 2))


@pytest.fixture(scope="session")
def suite_runs():
    """Every named suite, run once per session with its wall time."""
    import time

    from clusterbody.suites import SUITES

    out = {}
    for name, fn in SUITES.items():
        start = time.perf_counter()
        reports = fn()
        out[name] = (reports, time.perf_counter() - start)
    return out
