import pytest

from freqcrowd import lattice


@pytest.fixture(scope="session")
def nine_lattices():
    return {(fam, d): lattice.build_lattice(fam, d)
            for fam in lattice.FAMILIES for d in (3, 5, 7)}


@pytest.fixture()
def hh3():
    return lattice.build_lattice("heavy_hexagon", 3)
