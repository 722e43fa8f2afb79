import random

import pytest

from conftest import cyclic2, klein_four, sign_lattice
from glat import gallery
from glat.cohomology import h1_profile
from glat.errors import GroupMismatch, InvariantViolation, NotNormal
from glat.groups import generate
from glat.lattices import (GLattice, augmentation_ideal, direct_sum, dual, equivariant_iso_search,
                           fixed_sublattice, hermite_equal, identify_groups, is_permutation_in_basis, morphism_space,
                           permutation_lattice, restrict, transport, trivial_lattice, verify_isomorphism)
from glat.zlinalg import IntMatrix, kernel_basis, quotient_structure


def gallery_groups():
    return [cyclic2(), klein_four(), gallery.torus_pi_group(), gallery.torus_w_group(),
            gallery.trepalin_lattice(1).group]


def gallery_lattices():
    out = [gallery.torus_pi_lattice(), gallery.torus_w_lattice()]
    out += [gallery.trepalin_lattice(n) for n in (1, 2, 3)]
    out += [augmentation_ideal(g) for g in gallery_groups()]
    return out


# -- constructors -----------------------------------------------------------

def test_permutation_lattice_on_whole_group_is_trivial(v4):
    p = permutation_lattice(v4, v4.whole())
    assert p.rank == 1
    assert all(m == IntMatrix.identity(1) for m in p.action)


def test_regular_lattice_of_c2(c2):
    p = permutation_lattice(c2, c2.trivial())
    assert p.rank == 2
    assert p.action[1] == IntMatrix([[0, 1], [1, 0]])


def test_permutation_lattice_of_pi_over_c2_subgroup():
    g = gallery.torus_pi_group()
    for u in g.subgroups():
        if u.order == 2:
            p = permutation_lattice(g, u)
            assert p.rank == 2
            assert is_permutation_in_basis(p)


def test_augmentation_ideal_small(c2):
    a = augmentation_ideal(c2)
    assert a.rank == 1 and a.action[1] == IntMatrix([[-1]])
    assert augmentation_ideal(generate(2, {})).rank == 0


def test_augmentation_ideal_of_pi_is_conjugate_to_torus_matrices(torus_pi):
    a = augmentation_ideal(torus_pi.group)
    assert a.rank == 3
    res = equivariant_iso_search(a, torus_pi, coeff_bound=3)
    assert res.status == "proven"
    x = res.witness
    assert x.det() in (1, -1)
    for ma, mb in zip(a.generator_images(), torus_pi.generator_images()):
        assert x @ ma == mb @ x


def test_homomorphism_violation_detected(c2):
    with pytest.raises(InvariantViolation):
        GLattice(c2, [IntMatrix.identity(2), IntMatrix([[1, 1], [0, 1]])])


# -- dual, sums, restriction -------------------------------------------------

@pytest.mark.parametrize("lat", gallery_lattices(), ids=lambda n: f"{n.name}-{n.group.order}")
def test_dual_is_rank_preserving_involution(lat):
    d = dual(lat)
    assert d.rank == lat.rank
    d.check()
    assert dual(d).action == lat.action


def test_dual_of_permutation_lattice_is_equal(v4):
    for u in v4.subgroups():
        p = permutation_lattice(v4, u)
        assert dual(p).action == p.action


def test_dual_of_sign_is_sign(sign):
    assert dual(sign).action == sign.action


def test_direct_sum(sign, c2):
    zero = GLattice(c2, [IntMatrix.identity(0)] * 2)
    assert direct_sum(sign, zero).action == sign.action
    s = direct_sum(sign, sign)
    assert s.rank == 2 and s.action[1] == IntMatrix([[-1, 0], [0, -1]])
    with pytest.raises(GroupMismatch):
        direct_sum(sign, sign_lattice(cyclic2()))


def test_restrict(torus_w):
    g = torus_w.group
    triv = restrict(torus_w, g.trivial())
    assert triv.group.order == 1 and triv.rank == 3
    whole = restrict(torus_w, g.whole())
    assert whole.group.order == 8
    assert sorted(whole.action, key=lambda m: m.rows) == sorted(torus_w.action, key=lambda m: m.rows)
    minus = restrict(torus_w, g.subgroup_by_names(["g"]))
    assert minus.group.order == 2
    assert minus.action[1] == IntMatrix.diagonal([-1, -1, -1])


def test_fixed_sublattice_examples(trepalin, sign, c2):
    n1 = trepalin(1)
    f, emb = fixed_sublattice(n1, n1.group.trivial())
    assert f.rank == n1.rank and emb == IntMatrix.identity(n1.rank)
    gamma = n1.group.subgroup_by_names(["sigma"])
    f, emb = fixed_sublattice(n1, gamma)
    assert f.rank == 4
    g_elem = n1.group.generator_indices[0]
    m = f.action[g_elem]
    # g fixes a rank-2 sublattice and negates a rank-2 complement
    assert kernel_basis(m - IntMatrix.identity(4)).ncols == 2
    assert kernel_basis(m + IntMatrix.identity(4)).ncols == 2
    f, _ = fixed_sublattice(sign, c2.whole())
    assert f.rank == 0


def test_fixed_sublattice_requires_normal():
    s3 = generate(3, {"a": [[0, 1, 0], [1, 0, 0], [0, 0, 1]], "b": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]})
    lat = GLattice.from_generator_images(s3, list(s3.generators))
    u = s3.subgroup_by_names(["a"])
    with pytest.raises(NotNormal):
        fixed_sublattice(lat, u)


@pytest.mark.parametrize("lat", gallery_lattices(), ids=lambda n: f"{n.name}-{n.group.order}")
def test_fixed_lattices_are_saturated(lat):
    for u in lat.group.subgroups():
        basis = lat.fixed_basis(u.generators())
        q = quotient_structure(IntMatrix.identity(lat.rank), basis)
        assert not q.invariant_factors
        assert q.free_rank == lat.rank - basis.ncols


def test_fixed_rank_of_permutation_lattice_counts_orbits():
    for g in gallery_groups():
        for h in g.subgroups():
            p = permutation_lattice(g, h)
            cosets = [frozenset(g.mul_table[x][m] for m in h.members) for x in range(g.order)]
            cosets = sorted(set(cosets), key=min)
            for u in g.subgroups():
                orbits = set()
                for c in cosets:
                    orbit = frozenset(frozenset(g.mul_table[y][x] for x in c) for y in u.members)
                    orbits.add(orbit)
                assert p.fixed_rank(u) == len(orbits)


def test_is_permutation_in_basis(sign, trepalin):
    assert not is_permutation_in_basis(sign)
    g = gallery.torus_w_group()
    for u in g.subgroups():
        assert is_permutation_in_basis(permutation_lattice(g, u))
    n1 = trepalin(1)
    assert is_permutation_in_basis(restrict(n1, n1.group.subgroup_by_names(["g"])))


# -- iso search --------------------------------------------------------------

def test_iso_search_identity(torus_w):
    res = equivariant_iso_search(torus_w, torus_w)
    assert res.status == "proven" and res.witness == IntMatrix.identity(3)


def test_iso_search_refutes_sign_vs_trivial(sign, c2):
    res = equivariant_iso_search(sign, trivial_lattice(c2))
    assert res.status == "refuted"
    assert "fixed ranks" in res.reason


def test_iso_search_finds_random_conjugate():
    rng = random.Random(11)
    for lat in [gallery.torus_pi_lattice(), augmentation_ideal(klein_four()),
                permutation_lattice(klein_four(), klein_four().trivial())]:
        n = lat.rank
        x = xinv = IntMatrix.identity(n)
        for _ in range(3):
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-1, 1])
            e = [[int(a == b) for b in range(n)] for a in range(n)]
            f = [[int(a == b) for b in range(n)] for a in range(n)]
            e[i][j], f[i][j] = c, -c
            x = x @ IntMatrix(e)
            xinv = IntMatrix(f) @ xinv
        assert x @ xinv == IntMatrix.identity(n)
        conj = GLattice(lat.group, [x @ m @ xinv for m in lat.action])
        res = equivariant_iso_search(lat, conj, coeff_bound=3)
        assert res.status == "proven"
        assert verify_isomorphism(lat, conj, res.witness)
        assert h1_profile(lat).values() == h1_profile(conj).values()


def test_morphism_space_dimensions(v4):
    reg = permutation_lattice(v4, v4.trivial())
    triv = trivial_lattice(v4)
    assert len(morphism_space(triv, reg).basis) == 1
    assert len(morphism_space(reg, reg).basis) == 4
    for x in morphism_space(reg, reg).basis:
        assert all(x @ a == b @ x for a, b in zip(reg.action, reg.action))


def test_transport_between_group_copies(trepalin):
    a = trepalin(1)
    b = gallery.trepalin_lattice(1)
    assert a.group is not b.group
    phi = identify_groups(a.group, b.group)
    t = transport(b, a.group, phi)
    assert t.action == a.action


def test_hermite_equal():
    a = IntMatrix.from_columns([(1, 1), (0, 2)], 2)
    b = IntMatrix.from_columns([(1, -1), (1, 1)], 2)
    assert hermite_equal(a, b)
