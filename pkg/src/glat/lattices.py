"""G-lattices: free Z-modules with a unimodular action of a finite matrix group.

Action matrices act on column vectors, ``x . v = action[x] @ v``, and the action
is stored for every group element (indexed like ``group.elements``).
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatch, InvariantViolation, NotNormal
from .groups import Subgroup
from .zlinalg import IntMatrix, block_diag, hermite_basis, kernel_basis, solve_in_basis, vstack


class GLattice:
    def __init__(self, group, action, labels=None, name=None, check=True):
        action = tuple(action)
        if len(action) != group.order:
            raise ValueError("action must give one matrix per group element")
        self.group = group
        self.action = action
        self.rank = action[0].nrows if action else 0
        if labels is not None and len(labels) != self.rank:
            raise ValueError("one label per basis vector required")
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(self.rank))
        self.name = name or "N"
        self._cache = {}
        if check:
            self.check()

    @classmethod
    def from_generator_images(cls, group, images, labels=None, name=None, check=True):
        """Extend generator images (list in generator order, or name -> matrix) to all elements."""
        if hasattr(images, "items"):
            images = [images[n] for n in group.generator_names]
        images = [m if isinstance(m, IntMatrix) else IntMatrix(m) for m in images]
        if len(images) != len(group.generators):
            raise ValueError("need one image per generator")
        if images:
            r = images[0].nrows
        elif labels is not None:
            r = len(labels)
        else:
            r = 0
        for m in images:
            if m.shape != (r, r):
                raise ValueError("action matrices must be square of equal size")
        action = [IntMatrix.identity(r)]
        for i in range(1, group.order):
            p, k = group._tree[i]
            action.append(action[p] @ images[k])
        return cls(group, action, labels, name, check)

    def __repr__(self):
        return f"<GLattice {self.name} rank={self.rank} |G|={self.group.order}>"

    def generator_images(self):
        return [self.action[i] for i in self.group.generator_indices]

    def check(self):
        """Verify unimodularity and the homomorphism property on the full table."""
        ident = IntMatrix.identity(self.rank)
        if self.action[0] != ident:
            raise InvariantViolation("identity does not act trivially")
        for m in self.generator_images():
            if m.det() not in (1, -1):
                raise InvariantViolation("action matrix is not unimodular")
        t = self.group.mul_table
        n = self.group.order
        for i in range(n):
            ai = self.action[i]
            for j in range(n):
                if self.action[t[i][j]] != ai @ self.action[j]:
                    raise InvariantViolation(
                        f"action is not a homomorphism at ({self.group.word(i)}, {self.group.word(j)})")

    def same_action(self, other):
        return self.group is other.group and self.action == other.action

    def fixed_basis(self, members):
        """Saturated basis (columns, Hermite-reduced) of the vectors fixed by ``members``."""
        members = [m for m in members if m != 0]
        if not members or self.rank == 0:
            return IntMatrix.identity(self.rank)
        ident = IntMatrix.identity(self.rank)
        stacked = vstack([self.action[x] - ident for x in members], self.rank)
        return kernel_basis(stacked)

    def fixed_rank(self, u):
        key = ("fixed_rank", u.members)
        if key not in self._cache:
            gens = u.generators() if isinstance(u, Subgroup) else u
            self._cache[key] = self.fixed_basis(gens).ncols
        return self._cache[key]

    def sublattice(self, basis, labels=None, name=None):
        """The induced action on an invariant saturated sublattice spanned by ``basis``."""
        action = [solve_in_basis(basis, m @ basis) for m in self.action]
        return GLattice(self.group, action, labels, name)


def permutation_lattice(g, h):
    """The permutation lattice Z[G/H] on the left cosets of ``h``."""
    t = g.mul_table
    coset_of = {}
    reps = []
    for x in range(g.order):
        if x in coset_of:
            continue
        c = len(reps)
        reps.append(x)
        for m in h.members:
            coset_of[t[x][m]] = c
    n = len(reps)
    action = []
    for y in range(g.order):
        rows = [[0] * n for _ in range(n)]
        for j, x in enumerate(reps):
            rows[coset_of[t[y][x]]][j] = 1
        action.append(IntMatrix(rows, n))
    hname = ",".join(h.generator_words())
    labels = [f"{g.word(x)}<{hname}>" for x in reps]
    return GLattice(g, action, labels, name=f"Z[G/<{hname}>]")


def trivial_lattice(g, rank=1):
    ident = IntMatrix.identity(rank)
    return GLattice(g, [ident] * g.order, name="Z" if rank == 1 else f"Z^{rank}")


def augmentation_ideal(g):
    """Kernel of Z[G] -> Z in the basis ``e_x - e_1`` (x != 1, element order)."""
    n = g.order - 1
    t = g.mul_table
    action = []
    for y in range(g.order):
        rows = [[0] * n for _ in range(n)]
        for x in range(1, g.order):
            yx = t[y][x]
            if yx != 0:
                rows[yx - 1][x - 1] += 1
            if y != 0:
                rows[y - 1][x - 1] -= 1
        action.append(IntMatrix(rows, n))
    labels = [f"[{g.word(x)}]-[1]" for x in range(1, g.order)]
    return GLattice(g, action, labels, name="I_G")


def dual(n):
    inv = n.group.inverse
    action = [n.action[inv[x]].T for x in range(n.group.order)]
    return GLattice(n.group, action, [f"{s}*" if not s.endswith("*") else s[:-1] for s in n.labels],
                    name=f"{n.name}°" if not n.name.endswith("°") else n.name[:-1], check=False)


def direct_sum(a, b, name=None):
    if a.group is not b.group:
        raise GroupMismatch("direct sum of lattices over different groups")
    action = [block_diag([x, y]) for x, y in zip(a.action, b.action)]
    return GLattice(a.group, action, a.labels + b.labels, name or f"{a.name}+{b.name}", check=False)


def direct_sum_all(lattices, group, name=None):
    lattices = list(lattices)
    if not lattices:
        return GLattice(group, [IntMatrix.identity(0)] * group.order, [], name or "0", check=False)
    out = lattices[0]
    for lat in lattices[1:]:
        out = direct_sum(out, lat)
    if name:
        out.name = name
    return out


def restrict(n, u):
    """Restriction to a subgroup, re-enumerated as its own matrix group."""
    sub, to_parent = u.as_group()
    return GLattice(sub, [n.action[i] for i in to_parent], n.labels, name=n.name)


def fixed_sublattice(n, u):
    """``(N^u, embedding)`` for a normal subgroup; ``N^u`` carries the full group action."""
    if not u.is_normal():
        raise NotNormal("fixed sublattice needs a normal subgroup")
    emb = n.fixed_basis(u.generators())
    return n.sublattice(emb, name=f"{n.name}^U"), emb


def is_permutation_in_basis(n):
    for m in n.generator_images():
        for r in m.rows:
            if sorted(r) != [0] * (m.ncols - 1) + [1]:
                return False
        for c in zip(*m.rows):
            if sum(c) != 1:
                return False
    return True


@dataclass(frozen=True)
class LatticeMorphismSpace:
    source: GLattice
    target: GLattice
    basis: tuple


def morphism_space(a, b):
    """Z-basis of the equivariant maps ``X`` with ``X a(g) = b(g) X``."""
    if a.group is not b.group:
        raise GroupMismatch("morphisms between lattices over different groups")
    ra, rb = a.rank, b.rank
    nvar = ra * rb
    if nvar == 0:
        return LatticeMorphismSpace(a, b, ())
    rows = []
    for gi in a.group.generator_indices:
        A, B = a.action[gi].rows, b.action[gi].rows
        for i in range(rb):
            for j in range(ra):
                row = [0] * nvar
                for k in range(ra):
                    if A[k][j]:
                        row[i * ra + k] += A[k][j]
                for k in range(rb):
                    if B[i][k]:
                        row[k * ra + j] -= B[i][k]
                if any(row):
                    rows.append(row)
    if rows:
        ker = kernel_basis(IntMatrix(rows, nvar))
        vecs = ker.columns()
    else:
        vecs = IntMatrix.identity(nvar).columns()
    basis = tuple(IntMatrix([v[i * ra:(i + 1) * ra] for i in range(rb)], ra) for v in vecs)
    return LatticeMorphismSpace(a, b, basis)


@dataclass(frozen=True)
class IsoResult:
    status: str  # "proven" | "refuted" | "unknown"
    witness: IntMatrix = None
    reason: str = ""
    trials: int = 0

    @property
    def proven(self):
        return self.status == "proven"


def _coefficient_shells(dim, bound):
    # Deterministic odometer: all vectors with max |c| == s for s = 0, 1, ..., bound.
    for s in range(bound + 1):
        values = [0]
        for v in range(1, s + 1):
            values += [v, -v]
        for combo in itertools.product(values, repeat=dim):
            if max((abs(c) for c in combo), default=0) == s:
                yield combo


def refutation_invariants(a, b, with_cohomology=True):
    """First invariant that differs between ``a`` and ``b``, or None."""
    if a.rank != b.rank:
        return f"ranks differ ({a.rank} vs {b.rank})"
    subs = a.group.subgroups()
    for u in subs:
        fa, fb = a.fixed_rank(u), b.fixed_rank(u)
        if fa != fb:
            return f"fixed ranks differ on <{','.join(u.generator_words())}> ({fa} vs {fb})"
    if with_cohomology:
        from .cohomology import h1_profile
        for side, (x, y) in (("lattice", (a, b)), ("dual", (dual(a), dual(b)))):
            pa, pb = h1_profile(x), h1_profile(y)
            for u in subs:
                if pa[u] != pb[u]:
                    return (f"H1 of {side} differs on <{','.join(u.generator_words())}> "
                            f"({pa[u]} vs {pb[u]})")
    return None


def verify_isomorphism(a, b, x):
    if x.shape != (b.rank, a.rank) or x.det() not in (1, -1):
        return False
    return all(x @ ma == mb @ x for ma, mb in zip(a.action, b.action))


def equivariant_iso_search(a, b, coeff_bound=3, max_trials=200000, check_invariants=True):
    """Look for a unimodular intertwiner ``a -> b``.

    Returns ``refuted`` only with a proof (an invariant differs, or there is
    no equivariant map at all), ``proven`` with a re-verified witness, and
    ``unknown`` once the coefficient box or the trial budget is exhausted.
    """
    if a.group is not b.group:
        raise GroupMismatch("lattices are over different groups")
    if a.rank != b.rank:
        return IsoResult("refuted", reason=f"ranks differ ({a.rank} vs {b.rank})")
    if a.rank == 0:
        return IsoResult("proven", IntMatrix.identity(0))
    if a.action == b.action:
        return IsoResult("proven", IntMatrix.identity(a.rank))
    if check_invariants:
        why = refutation_invariants(a, b)
        if why:
            return IsoResult("refuted", reason=why)
    basis = morphism_space(a, b).basis
    if not basis:
        return IsoResult("refuted", reason="no nonzero equivariant maps")
    trials = 0
    exact_only = max(m.maxabs() for m in basis) * coeff_bound * len(basis) > 2 ** 20
    stack = None if exact_only else np.array([m.rows for m in basis], dtype=np.float64)
    for combo in _coefficient_shells(len(basis), coeff_bound):
        if trials >= max_trials:
            break
        trials += 1
        if not any(combo):
            continue
        if stack is not None:
            # float determinant only rejects candidates far from +-1; every
            # survivor is re-checked exactly
            d = np.linalg.det(np.tensordot(combo, stack, axes=1))
            if abs(abs(d) - 1.0) > 0.25:
                continue
        x = None
        for c, m in zip(combo, basis):
            if c:
                term = m.scale(c)
                x = term if x is None else x + term
        if x.det() in (1, -1):
            if not verify_isomorphism(a, b, x):
                raise InvariantViolation("iso search produced a non-equivariant witness")
            return IsoResult("proven", x, trials=trials)
    return IsoResult("unknown", reason=f"no witness with coefficients in [-{coeff_bound},{coeff_bound}]"
                     f" over {len(basis)} basis maps ({trials} trials)", trials=trials)


def transport(n, group, phi):
    """Re-index ``n`` over ``group`` along an isomorphism ``phi: group -> n.group``."""
    return GLattice(group, [n.action[phi[i]] for i in range(group.order)], n.labels, n.name)


def identify_groups(g, h):
    """Element map ``g -> h`` matching generators by position, checked to be an isomorphism."""
    if g.order != h.order or len(g.generators) != len(h.generators):
        raise GroupMismatch("groups cannot be identified by their generators")
    phi = [0] * g.order
    for i in range(1, g.order):
        p, k = g._tree[i]
        phi[i] = h.mul_table[phi[p]][h.generator_indices[k]]
    if len(set(phi)) != g.order:
        raise GroupMismatch("generator correspondence is not a bijection")
    tg, th = g.mul_table, h.mul_table
    for i in range(g.order):
        for j in range(g.order):
            if phi[tg[i][j]] != th[phi[i]][phi[j]]:
                raise GroupMismatch("generator correspondence is not a homomorphism")
    return tuple(phi)


def hermite_equal(a, b):
    return hermite_basis(a) == hermite_basis(b)
