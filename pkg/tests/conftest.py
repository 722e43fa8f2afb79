import sys

import pytest

from glat import gallery
from glat.groups import generate
from glat.lattices import GLattice, trivial_lattice
from glat.zlinalg import IntMatrix


def cyclic2():
    return generate(1, {"t": [[-1]]})


def klein_four():
    return generate(2, {"a": [[-1, 0], [0, 1]], "b": [[1, 0], [0, -1]]})


def sign_lattice(g=None):
    g = g or cyclic2()
    return GLattice.from_generator_images(g, [IntMatrix([[-1]])], name="sign")


@pytest.fixture
def c2():
    return cyclic2()


@pytest.fixture
def v4():
    return klein_four()


@pytest.fixture
def sign(c2):
    return sign_lattice(c2)


@pytest.fixture
def triv_c2(c2):
    return trivial_lattice(c2)


@pytest.fixture(scope="session")
def torus_pi():
    return gallery.torus_pi_lattice()


@pytest.fixture(scope="session")
def torus_w():
    return gallery.torus_w_lattice()


@pytest.fixture(scope="session")
def trepalin():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = gallery.trepalin_lattice(n)
        return cache[n]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
