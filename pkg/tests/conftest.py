from __future__ import annotations

import pytest

from sharpfront import carrying_capacity, fisher_kpp


@pytest.fixture(scope="session")
def fisher():
    return fisher_kpp()


@pytest.fixture(scope="session")
def kappa(fisher):
    return carrying_capacity(fisher).kappa
