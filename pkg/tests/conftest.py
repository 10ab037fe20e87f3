import pytest

from hulthen_dirac.model import ModelParams, Symmetry
from hulthen_dirac.tables import MASS, STRENGTH


@pytest.fixture
def pseudospin_table1():
    """Parameters of the stored pseudospin table with C_ps = -4.9."""
    return lambda delta: ModelParams(MASS, delta, STRENGTH, -4.9, Symmetry.PSEUDOSPIN)


@pytest.fixture
def spin_table2():
    return lambda delta: ModelParams(MASS, delta, STRENGTH, 4.9, Symmetry.SPIN)
