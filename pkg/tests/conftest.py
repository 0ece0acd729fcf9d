from __future__ import annotations

import pytest

from rbjordan.field import make_field
from rbjordan.reports import SetCache


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def sets3(F3):
    """Enumerated operator sets over F_3, shared by the whole session."""
    return SetCache(F3)
