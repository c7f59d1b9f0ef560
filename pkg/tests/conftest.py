import pytest

from anyonmask.anyons import abelian_c0, ising_like
from anyonmask.masker import abelian_standard_scheme, ising_cyclic_scheme


@pytest.fixture(scope="session")
def abelian_model():
    return abelian_c0()


@pytest.fixture(scope="session")
def ising_model():
    return ising_like(1)


@pytest.fixture(scope="session")
def abelian_scheme():
    return abelian_standard_scheme()


@pytest.fixture(scope="session")
def ising_scheme():
    return ising_cyclic_scheme()
