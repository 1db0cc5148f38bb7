import pytest

from projquant.btquant import build_quadrature, standard_family


@pytest.fixture(scope="session")
def family():
    return standard_family()


@pytest.fixture(scope="session")
def quad64():
    """Shared exact rule for every level up to 64."""
    return build_quadrature(64)


@pytest.fixture(scope="session")
def quad16():
    return build_quadrature(16)
