import pytest

from diracfock import PhysicalConstants, canonical_gamma_set


@pytest.fixture(scope="session")
def gs():
    return canonical_gamma_set()


@pytest.fixture(scope="session")
def nat():
    return PhysicalConstants.natural_units(mass=1.0)
