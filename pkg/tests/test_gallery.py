import pytest

from glat import gallery
from glat.errors import InvalidParameter
from glat.groups import abelian_invariants
from glat.lattices import (augmentation_ideal, equivariant_iso_search, identify_groups, is_permutation_in_basis,
                           restrict, transport)
from glat.zlinalg import FiniteAbelianGroup, IntMatrix, hermite_basis


def test_torus_pi_generators(torus_pi):
    rho, sigma = torus_pi.generator_images()
    ident = IntMatrix.identity(3)
    assert rho @ rho == ident and sigma @ sigma == ident
    assert rho != ident and sigma != ident
    assert rho @ sigma == sigma @ rho
    assert torus_pi.group.order == 4


def test_torus_pi_is_augmentation_ideal(torus_pi):
    res = equivariant_iso_search(augmentation_ideal(torus_pi.group), torus_pi)
    assert res.status == "proven"


def test_torus_w(torus_w):
    g = torus_w.group
    assert abelian_invariants(g) == FiniteAbelianGroup((2, 2, 2))
    minus = IntMatrix.diagonal([-1, -1, -1])
    assert minus in g.elements
    assert all(minus @ m == m @ minus for m in g.generators)
    assert len(g.subgroups()) == 16


def test_torus_w_restricts_to_torus_pi(torus_w, torus_pi):
    u = torus_w.group.subgroup_by_names(["rho", "sigma"])
    r = restrict(torus_w, u)
    r = transport(r, torus_pi.group, identify_groups(torus_pi.group, r.group))
    assert equivariant_iso_search(r, torus_pi).status == "proven"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trepalin_shape(trepalin, n):
    lat = trepalin(n)
    assert lat.rank == 4 * n + 4
    assert list(lat.labels) == gallery.trepalin_labels(n)
    assert lat.labels[:2] == ("s", "l")
    g, sigma = lat.generator_images()
    ident = IntMatrix.identity(lat.rank)
    assert sigma @ sigma == ident and g @ g == ident and g @ sigma == sigma @ g
    assert lat.group.order == 4
    lat.check()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trepalin_g_side_is_permutation(trepalin, n):
    lat = trepalin(n)
    assert is_permutation_in_basis(restrict(lat, lat.group.subgroup_by_names(["g"])))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trepalin_fixed_lattice_matches_printed_generators(trepalin, n):
    lat = trepalin(n)
    gamma = lat.group.subgroup_by_names(["sigma"])
    fixed = lat.fixed_basis(gamma.generators())
    printed = gallery.trepalin_fixed_generators(n)
    assert fixed.ncols == 2 * n + 2
    assert hermite_basis(printed) == hermite_basis(fixed)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trepalin_residual_action(trepalin, n):
    lat = trepalin(n)
    g = lat.generator_images()[0]
    cols = gallery.trepalin_fixed_generators(n).columns()
    assert g.apply(cols[0]) == cols[0] and g.apply(cols[1]) == cols[1]
    for c in cols[2:]:
        assert g.apply(c) == tuple(-v for v in c)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sigma_s_consistency(n):
    assert gallery.trepalin_sigma_s_consistency(n)
    assert not gallery.trepalin_sigma_s_consistency(n, l_shift=1)


def test_trepalin_rejects_bad_parameter():
    for bad in (0, -1, 1.5):
        with pytest.raises(InvalidParameter):
            gallery.trepalin_lattice(bad)
