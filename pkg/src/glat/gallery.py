"""Builders for the concrete lattices used throughout the tests and the CLI.

* ``torus_pi_lattice``: the character lattice of the norm-one quotient torus
  for a biquadratic extension, with the Klein four Galois group acting.
* ``torus_w_lattice``: the same lattice with the inversion ``-I_3`` adjoined.
* ``trepalin_lattice(n)``: the Picard lattice of the real conic bundle with
  ``4n + 2`` degenerate fibres, acted on by complex conjugation ``sigma`` and
  the involution ``g``.
"""

from .errors import InvalidParameter
from .groups import direct_product_action, generate
from .lattices import GLattice
from .zlinalg import IntMatrix

TORUS_RHO = IntMatrix([[0, 0, 1], [-1, -1, -1], [1, 0, 0]])
TORUS_SIGMA = IntMatrix([[-1, -1, -1], [0, 0, 1], [0, 1, 0]])
MINUS_I3 = IntMatrix([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])


def torus_pi_group():
    return generate(3, [("rho", TORUS_RHO), ("sigma", TORUS_SIGMA)])


def torus_pi_lattice():
    g = torus_pi_group()
    return GLattice.from_generator_images(g, [TORUS_RHO, TORUS_SIGMA], name="torus-pi")


def torus_w_group():
    return direct_product_action(torus_pi_group(), generate(3, [("g", MINUS_I3)]))


def torus_w_lattice():
    g = torus_w_group()
    return GLattice.from_generator_images(g, list(g.generators), name="torus-w")


def trepalin_labels(n):
    ks = range(1, 2 * n + 1)
    return ["s", "l"] + [f"l{k}" for k in ks] + [f"l-{k}" for k in ks] + ["l0", "linf"]


def _trepalin_matrices(n):
    labels = trepalin_labels(n)
    rank = len(labels)
    idx = {name: i for i, name in enumerate(labels)}
    ks = range(1, 2 * n + 1)

    def matrix(images):
        cols = []
        for name in labels:
            v = [0] * rank
            for target, c in images[name].items():
                v[idx[target]] += c
            cols.append(v)
        return IntMatrix.from_columns(cols, rank)

    sigma = {"l": {"l": 1}, "l0": {"l": 1, "l0": -1}, "linf": {"l": 1, "linf": -1}}
    for k in ks:
        sigma[f"l{k}"] = {"l": 1, f"l-{k}": -1}
        sigma[f"l-{k}"] = {"l": 1, f"l{k}": -1}
    s_image = {"s": 1, "l": 2 * n + 1, "l0": -1, "linf": -1}
    for k in ks:
        s_image[f"l{k}"] = -1
        s_image[f"l-{k}"] = -1
    sigma["s"] = s_image

    g = {name: {name: 1} for name in ("s", "l", "l0", "linf")}
    for k in ks:
        g[f"l{k}"] = {f"l-{k}": 1}
        g[f"l-{k}"] = {f"l{k}": 1}
    return matrix(g), matrix(sigma), labels


def trepalin_lattice(n):
    """Picard lattice ``N_n`` (rank ``4n + 4``) over ``W_n = <g> x <sigma>``.

    Basis order: s, l, l1..l2n, l-1..l-2n, l0, linf.  ``g`` fixes s, l, l0,
    linf and swaps lk with l-k; ``sigma`` fixes l, sends lk to l - l-k, l0 to
    l - l0, linf to l - linf, and s to s + (2n+1)l - sum(lk + l-k) - l0 - linf.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"trepalin family parameter must be a positive integer, got {n!r}")
    g, sigma, labels = _trepalin_matrices(n)
    group = generate(len(labels), [("g", g), ("sigma", sigma)])
    return GLattice.from_generator_images(group, [g, sigma], labels, name=f"trepalin-{n}")


def trepalin_fixed_generators(n):
    """The hand-computed generators of the sigma-fixed sublattice, as columns.

    2s - sum(lk + l-k) - l0 - linf, l, and lk - l-k for k = 1..2n.
    """
    labels = trepalin_labels(n)
    idx = {name: i for i, name in enumerate(labels)}
    rank = len(labels)
    ks = range(1, 2 * n + 1)
    s_t = [0] * rank
    s_t[idx["s"]] = 2
    for name in [f"l{k}" for k in ks] + [f"l-{k}" for k in ks] + ["l0", "linf"]:
        s_t[idx[name]] = -1
    l_t = [0] * rank
    l_t[idx["l"]] = 1
    cols = [s_t, l_t]
    for k in ks:
        v = [0] * rank
        v[idx[f"l{k}"]] = 1
        v[idx[f"l-{k}"]] = -1
        cols.append(v)
    return IntMatrix.from_columns(cols, rank)


def trepalin_sigma_s_consistency(n, l_shift=0):
    """Check ``2(sigma(s) - s) == sum_i (sigma(L_i) - L_i)`` on ``trepalin_lattice(n)``.

    The components L_i are lk (k = +-1..+-2n), l0 and linf.  ``l_shift`` adds
    to the coefficient of l in sigma(s) before checking (a negative control).
    """
    lat = trepalin_lattice(n)
    labels = lat.labels
    idx = {name: i for i, name in enumerate(labels)}
    sigma = lat.action[lat.group.generator_indices[lat.group.generator_names.index("sigma")]]
    rank = lat.rank

    def image(name):
        return list(sigma.column(idx[name]))

    lhs = image("s")
    lhs[idx["l"]] += l_shift
    lhs[idx["s"]] -= 1
    lhs = [2 * v for v in lhs]
    rhs = [0] * rank
    ks = range(1, 2 * n + 1)
    for name in [f"l{k}" for k in ks] + [f"l-{k}" for k in ks] + ["l0", "linf"]:
        im = image(name)
        for i in range(rank):
            rhs[i] += im[i]
        rhs[idx[name]] -= 1
    return lhs == rhs
