"""H^0 and H^1 of G-lattices.

``h1`` uses the inhomogeneous bar complex truncated at degree 2: cocycles are
the integer kernel of ``C^1 -> C^2`` with the cocycle identity imposed for
every pair of group elements, coboundaries the image of ``C^0 -> C^1``.
``h1_cyclic`` is an independent route for cyclic groups,
``ker(norm) / im(t - 1)``, kept for cross-checking.
"""

from dataclasses import dataclass, field

from . import _backend
from .errors import InvariantViolation, NotCyclic
from .zlinalg import FiniteAbelianGroup, IntMatrix, hermite_rows, kernel_basis, quotient_structure


def h0(n):
    """Rank of the sublattice fixed by the whole group."""
    return n.fixed_rank(n.group.whole())


def bar_differentials(n, members):
    """``(d0, d1)`` of the bar complex of ``n`` restricted to ``members``."""
    r = n.rank
    members = list(members)
    pos = {x: k for k, x in enumerate(members)}
    t = n.group.mul_table
    ncols = len(members) * r
    d1 = []
    for g in members:
        ag = n.action[g].rows
        for h in members:
            gh = t[g][h]
            for i in range(r):
                row = [0] * ncols
                base_h = pos[h] * r
                for j, v in enumerate(ag[i]):
                    if v:
                        row[base_h + j] += v
                row[pos[gh] * r + i] -= 1
                row[pos[g] * r + i] += 1
                d1.append(row)
    d0 = []
    for x in members:
        ax = n.action[x].rows
        for i in range(r):
            d0.append([ax[i][j] - (i == j) for j in range(r)])
    return IntMatrix(d0, r), IntMatrix(d1, ncols)


def _h1_on(n, members):
    members = list(members)
    r = n.rank
    if r == 0 or len(members) == 1:
        return FiniteAbelianGroup()
    actions = {x: n.action[x].rows for x in members}
    raw = _backend.cocycle_kernel(actions, n.group.mul_table, members, r)
    cocycles = IntMatrix.from_columns(hermite_rows(raw, len(members) * r), len(members) * r)
    d0 = IntMatrix([[ax[i][j] - (i == j) for j in range(r)]
                    for ax in (actions[x] for x in members) for i in range(r)], r)
    return quotient_structure(cocycles, d0)


def h1(n):
    """First cohomology of the whole group, via the bar complex."""
    return _h1_on(n, range(n.group.order))


def h1_subgroup(n, u):
    """H^1 of the restriction of ``n`` to the subgroup ``u``."""
    key = ("h1", u.members)
    if key not in n._cache:
        n._cache[key] = _h1_on(n, u.members)
    return n._cache[key]


def h1_cyclic(n, generator_index):
    """H^1 of a cyclic group as ``ker(norm) / im(t - 1)``."""
    g = n.group
    m = g.element_order(generator_index)
    if m != g.order:
        raise NotCyclic(f"element {g.word(generator_index)} has order {m}, group has order {g.order}")
    return _h1_cyclic_members(n, generator_index, m)


def _h1_cyclic_members(n, gen, m):
    r = n.rank
    if r == 0 or m == 1:
        return FiniteAbelianGroup()
    t = n.group.mul_table
    powers = [0]
    for _ in range(m - 1):
        powers.append(t[powers[-1]][gen])
    norm = n.action[powers[0]]
    for p in powers[1:]:
        norm = norm + n.action[p]
    diff = n.action[gen] - IntMatrix.identity(r)
    return quotient_structure(kernel_basis(norm), diff)


def h1_cyclic_subgroup(n, u):
    """Cyclic-route H^1 on a cyclic subgroup, using its first generating element."""
    for x in u.members:
        if n.group.element_order(x) == u.order:
            return _h1_cyclic_members(n, x, u.order)
    raise NotCyclic("subgroup is not cyclic")


@dataclass
class CohomologyProfile:
    lattice: object
    entries: dict = field(default_factory=dict)

    def __getitem__(self, u):
        return self.entries[u]

    def items(self):
        return self.entries.items()

    def is_trivial(self):
        return all(v.is_trivial() for v in self.entries.values())

    def first_nontrivial(self):
        for u, v in self.entries.items():
            if not v.is_trivial():
                return u, v
        return None

    def largest_nontrivial(self):
        """The nontrivial entry on the latest subgroup in canonical order (largest order)."""
        hit = None
        for u, v in self.entries.items():
            if not v.is_trivial():
                hit = (u, v)
        return hit

    def values(self):
        return [self.entries[u] for u in self.entries]


def h1_profile(n):
    """H^1 of ``n`` restricted to every subgroup, in canonical subgroup order."""
    if "h1_profile" in n._cache:
        return n._cache["h1_profile"]
    entries = {}
    for u in n.group.subgroups():
        val = h1_subgroup(n, u)
        if val.free_rank or (val.invariant_factors and u.order % val.exponent):
            raise InvariantViolation(f"H1 {val} is not killed by the subgroup order {u.order}")
        entries[u] = val
    if not entries[n.group.trivial()].is_trivial():
        raise InvariantViolation("H1 of the trivial group is nonzero")
    prof = CohomologyProfile(n, entries)
    n._cache["h1_profile"] = prof
    return prof
