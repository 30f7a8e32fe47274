from __future__ import annotations

from fractions import Fraction

import pytest

from logcalc import catalog


@pytest.fixture(scope="session")
def jordan2():
    return catalog.jordan_module("J2", Fraction(1, 2), size=2)


@pytest.fixture(scope="session")
def irreducible3():
    return catalog.sl2_irreducible("V3", 3)


@pytest.fixture(scope="session")
def jordan_tables():
    from logcalc.checks import jordan_fixture_tables

    return jordan_fixture_tables()


@pytest.fixture(scope="session")
def honest_table():
    from logcalc.checks import honest_fixture_table

    return honest_fixture_table()


@pytest.fixture(scope="session")
def epsilon_pair():
    from logcalc.checks import epsilon_instance

    return epsilon_instance()
