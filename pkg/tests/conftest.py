import pytest

from hermfold.folding import default_automorphism, fold_hermitian, orbit_chains
from hermfold.hermitian_curve import curve_create
from hermfold.quantum_params import fqhc_construct


@pytest.fixture(scope="session")
def curve2():
    return curve_create(2)


@pytest.fixture(scope="session")
def curve4():
    return curve_create(4)


@pytest.fixture(scope="session")
def chains2(curve2):
    """sigma_{0,1} chains of length 2: the points sharing an x coordinate."""
    return orbit_chains(default_automorphism(curve2, 2), curve2, 2)


@pytest.fixture(scope="session")
def folded_c1(curve2, chains2):
    return fold_hermitian(curve2, 4, chains2)


@pytest.fixture(scope="session")
def small_fqhc():
    """The q=2, m=2 FQHC with r1=4, r2=6 and its formula parameters."""
    return fqhc_construct(2, 4, 6, 2)
