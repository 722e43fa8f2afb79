import pytest

from conftest import cyclic2, klein_four, sign_lattice
from glat import gallery
from glat.cohomology import h1_profile
from glat.errors import GroupMismatch
from glat.lattices import (augmentation_ideal, direct_sum, direct_sum_all, dual, is_permutation_in_basis,
                           permutation_lattice, trivial_lattice, verify_isomorphism)
from glat.resolutions import (coflasque_cover, flasque_resolution, is_coflasque, is_flasque,
                              similarity_verdict, stably_permutation_verdict)
from glat.zlinalg import FiniteAbelianGroup, IntMatrix, kernel_basis, quotient_structure, same_lattice, smith_normal_form


def gallery_groups():
    return [cyclic2(), klein_four(), gallery.torus_pi_group(), gallery.torus_w_group(),
            gallery.trepalin_lattice(1).group]


def check_exact(res):
    m, s, f = res.m, res.s, res.f
    assert m.rank + f.rank == s.rank
    assert is_permutation_in_basis(s)
    assert all(res.inject @ a == b @ res.inject for a, b in zip(m.action, s.action))
    assert all(res.project @ a == b @ res.project for a, b in zip(s.action, f.action))
    assert (res.project @ res.inject).is_zero()
    assert smith_normal_form(res.inject).diag == (1,) * m.rank
    if f.rank:
        assert quotient_structure(IntMatrix.identity(f.rank), res.project).is_trivial()
        assert same_lattice(res.inject, kernel_basis(res.project))


# -- covers -------------------------------------------------------------------

def test_cover_of_trivial_lattice(v4):
    c = coflasque_cover(trivial_lattice(v4))
    assert c.p.rank == 1 and c.kernel.rank == 0


def test_cover_of_permutation_lattice_has_coflasque_kernel(v4):
    for u in v4.subgroups():
        c = coflasque_cover(permutation_lattice(v4, u))
        assert h1_profile(c.kernel).is_trivial()


def test_cover_of_dual_torus_w(torus_w):
    c = coflasque_cover(dual(torus_w))
    assert len(torus_w.group.subgroups()) == 16
    assert h1_profile(c.kernel).is_trivial()
    # onto fixed points for every subgroup
    for u in torus_w.group.subgroups():
        mu = dual(torus_w).fixed_basis(u.generators())
        assert quotient_structure(mu, c.cover @ c.p.fixed_basis(u.generators())).is_trivial()


# -- resolutions --------------------------------------------------------------

def test_resolution_of_trivial_lattice(v4):
    res = flasque_resolution(trivial_lattice(v4))
    assert res.f.rank == 0
    check_exact(res)


def test_resolution_of_torus_w(torus_w):
    res = flasque_resolution(torus_w)
    check_exact(res)
    assert h1_profile(res.f).is_trivial()
    assert h1_profile(dual(res.f)).is_trivial()


def test_resolution_of_augmentation_ideal(v4):
    res = flasque_resolution(augmentation_ideal(v4))
    check_exact(res)
    assert h1_profile(dual(res.f)).is_trivial()


@pytest.mark.parametrize("make", [gallery.torus_pi_lattice, lambda: gallery.trepalin_lattice(1),
                                  lambda: sign_lattice()])
def test_resolution_is_exact_and_flasque(make):
    res = flasque_resolution(make())
    check_exact(res)
    assert is_flasque(res.f)[0]


def test_resolution_is_well_defined_up_to_padding(torus_pi):
    g = torus_pi.group
    base = flasque_resolution(torus_pi).f
    for u in g.subgroups():
        padded = direct_sum(torus_pi, permutation_lattice(g, u))
        f2 = flasque_resolution(padded).f
        assert h1_profile(f2).values() == h1_profile(base).values()
        assert h1_profile(dual(f2)).values() == h1_profile(dual(base)).values()


# -- flasque / coflasque predicates ------------------------------------------

def test_predicates_on_examples(sign, c2, trepalin):
    p = permutation_lattice(c2, c2.trivial())
    assert is_coflasque(p) == (True, None)
    assert is_flasque(p) == (True, None)
    ok, wit = is_coflasque(sign)
    assert not ok and wit == c2.whole()
    assert not is_flasque(sign)[0]
    for n in (1, 2):
        assert not is_coflasque(trepalin(n))[0]


# -- stable permutation verdicts --------------------------------------------

def test_verdict_on_permutation_lattice(v4):
    p = permutation_lattice(v4, v4.subgroups()[1])
    rep = stably_permutation_verdict(p)
    assert rep.verdict == "ConsistentWithStablyPermutation"
    assert rep.search.status == "proven"
    assert rep.search.left_padding == ()
    assert rep.search.right_padding == (p.name,)


def test_verdict_on_trepalin(trepalin):
    n1 = trepalin(1)
    rep = stably_permutation_verdict(n1)
    assert rep.verdict == "NotStablyPermutation"
    side, u, val = rep.witness
    assert side == "N" and u == n1.group.whole()
    assert val == FiniteAbelianGroup((2, 2))
    assert rep.search is None


def test_verdict_on_flasque_part_of_torus_w(torus_w):
    f = flasque_resolution(torus_w).f
    rep = stably_permutation_verdict(f)
    assert rep.verdict == "ConsistentWithStablyPermutation"
    assert rep.search.status == "unknown"
    assert rep.search.rank_bound == f.rank + 8 and rep.search.coeff_bound == 3


def test_verdict_never_obstructs_permutation_lattices():
    for g in gallery_groups():
        for u in g.subgroups():
            p = permutation_lattice(g, u)
            rep = stably_permutation_verdict(p, search=False)
            assert rep.verdict == "ConsistentWithStablyPermutation"


def test_verdict_on_permuted_basis_sum_proves_decomposition():
    g = gallery.torus_w_group()
    subs = g.subgroups()
    lat = direct_sum_all([permutation_lattice(g, subs[i]) for i in (9, 2, 15, 2)], g)
    rep = stably_permutation_verdict(lat)
    assert rep.search.status == "proven"
    by_name = {permutation_lattice(g, u).name: permutation_lattice(g, u) for u in subs}
    q = direct_sum_all([by_name[name] for name in rep.search.right_padding], g)
    assert verify_isomorphism(lat, q, rep.search.witness)


def test_verdict_soundness_and_determinism(sign, v4):
    lats = [sign, augmentation_ideal(v4), dual(augmentation_ideal(v4)), trivial_lattice(v4)]
    for lat in lats:
        rep = stably_permutation_verdict(lat, rank_bound=lat.rank + 3)
        again = stably_permutation_verdict(lat, rank_bound=lat.rank + 3)
        assert rep.verdict == again.verdict and rep.witness == again.witness
        if rep.verdict == "NotStablyPermutation":
            assert not rep.witness[2].is_trivial()
        else:
            assert h1_profile(lat).is_trivial() and h1_profile(dual(lat)).is_trivial()
            assert rep.search.status == again.search.status
            assert rep.search.detail == again.search.detail


def test_aug_ideal_of_c2_is_not_stably_permutation(c2):
    rep = stably_permutation_verdict(augmentation_ideal(c2))
    assert rep.verdict == "NotStablyPermutation"


# -- similarity -----------------------------------------------------------------

def test_similarity_identical(torus_w):
    assert similarity_verdict(torus_w, torus_w).status == "similar"


def test_trepalin_lattices_not_similar(trepalin):
    res = similarity_verdict(trepalin(1), trepalin(2))
    assert res.status == "not_similar"
    whole = trepalin(1).group.whole()
    entries = {(side, u): (va, vb) for side, u, va, vb in res.differences}
    va, vb = entries[("N", whole)]
    assert (va.order, vb.order) == (4, 16)


def test_trivial_vs_regular_are_similar(c2):
    res = similarity_verdict(trivial_lattice(c2), permutation_lattice(c2, c2.trivial()))
    assert res.status == "similar"
    assert res.search.left_padding and res.search.right_padding


def test_similarity_rejects_bad_identification(trepalin):
    with pytest.raises(GroupMismatch):
        similarity_verdict(trepalin(1), trepalin(2), identification=(0, 1, 1, 3))
