"""Finite subgroups of GL(n, Z) given by named generators.

Elements are enumerated breadth-first: starting from the identity, each
discovered element is multiplied on the right by the generators in input
order.  The discovery order is the element numbering used everywhere else
(subgroup member sets, action tables, reports), so it must stay stable.
"""

from collections import deque
from functools import cached_property

from .errors import InvalidParameter, NotAbelian, NotCommuting, NotFinite, NotNormal, NotUnimodular
from .zlinalg import FiniteAbelianGroup, IntMatrix, quotient_structure

DEFAULT_ELEMENT_CAP = 10000


class FiniteMatrixGroup:
    def __init__(self, degree, names, generators, elements, words, tree):
        self.degree = degree
        self.generator_names = tuple(names)
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.element_words = tuple(words)
        self._tree = tuple(tree)  # (parent index, generator index) per element
        self._index = {m: i for i, m in enumerate(self.elements)}
        self.factors = None

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteMatrixGroup degree={self.degree} order={self.order} gens={self.generator_names}>"

    def index(self, matrix):
        return self._index[matrix]

    def find(self, matrix):
        return self._index.get(matrix)

    def word(self, i):
        w = self.element_words[i]
        return "*".join(self.generator_names[k] for k in w) if w else "1"

    @cached_property
    def generator_indices(self):
        return tuple(self._index[g] for g in self.generators)

    @cached_property
    def mul_table(self):
        n = self.order
        return tuple(tuple(self._index[self.elements[i] @ self.elements[j]] for j in range(n))
                     for i in range(n))

    @cached_property
    def inverse(self):
        table = self.mul_table
        return tuple(row.index(0) for row in table)

    def mul(self, i, j):
        return self.mul_table[i][j]

    def is_abelian(self):
        t = self.mul_table
        n = self.order
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    def element_order(self, i):
        k, x = 1, i
        while x != 0:
            x = self.mul_table[x][i]
            k += 1
        return k

    def closure(self, indices):
        """Member set of the subgroup generated by the given element indices."""
        gens = sorted(set(indices) - {0})
        seen = {0}
        queue = deque([0])
        t = self.mul_table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def subgroup(self, indices):
        return Subgroup(self, self.closure(indices))

    def subgroup_by_names(self, names):
        pos = {n: k for k, n in enumerate(self.generator_names)}
        return self.subgroup(self.generator_indices[pos[n]] for n in names)

    def whole(self):
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self):
        return Subgroup(self, (0,))

    @cached_property
    def _subgroups(self):
        cyclic = {self.closure([i]) for i in range(self.order)}
        found = set(cyclic)
        queue = deque(sorted(cyclic))
        while queue:
            h = queue.popleft()
            for c in cyclic:
                if not set(c) <= set(h):
                    j = self.closure(h + c)
                    if j not in found:
                        found.add(j)
                        queue.append(j)
        return tuple(Subgroup(self, m) for m in sorted(found, key=lambda m: (len(m), m)))

    def subgroups(self):
        return list(self._subgroups)

    def subgroup_classes(self):
        """Subgroups grouped by conjugacy; each class is listed in sort order."""
        t, inv = self.mul_table, self.inverse
        classes = {}
        for u in self._subgroups:
            key = min(tuple(sorted(t[t[x][m]][inv[x]] for m in u.members))
                      for x in range(self.order))
            classes.setdefault(key, []).append(u)
        return sorted(classes.values(), key=lambda c: c[0].sort_key)

    def conjugacy_representatives(self):
        return [c[0] for c in self.subgroup_classes()]


class Subgroup:
    __slots__ = ("parent", "members", "_set")

    def __init__(self, parent, members):
        self.parent = parent
        self.members = tuple(sorted(members))
        self._set = frozenset(self.members)

    @property
    def order(self):
        return len(self.members)

    @property
    def sort_key(self):
        return (len(self.members), self.members)

    def __contains__(self, i):
        return i in self._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens=[{', '.join(self.generator_words())}])"

    def is_subgroup_of(self, other):
        return self._set <= other._set

    def is_normal(self):
        t, inv = self.parent.mul_table, self.parent.inverse
        return all(t[t[x][m]][inv[x]] in self._set
                   for x in self.parent.generator_indices for m in self.members)

    def generators(self):
        """A small generating set, greedily chosen in element order."""
        gens, span = [], {0}
        for i in self.members:
            if i not in span:
                gens.append(i)
                span = set(self.parent.closure(gens))
        return gens

    def generator_words(self):
        return [self.parent.word(i) for i in self.generators()] or ["1"]

    def as_group(self, element_cap=DEFAULT_ELEMENT_CAP):
        """Re-enumerate as a standalone matrix group, with a map to parent indices."""
        gens = self.generators()
        g = generate(self.parent.degree,
                     [(self.parent.word(i), self.parent.elements[i]) for i in gens],
                     element_cap=element_cap)
        to_parent = tuple(self.parent.index(m) for m in g.elements)
        return g, to_parent


def _named(generators):
    if hasattr(generators, "items"):
        generators = list(generators.items())
    out = []
    for k, item in enumerate(generators):
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            name, m = item
        else:
            name, m = f"g{k + 1}", item
        out.append((name, m if isinstance(m, IntMatrix) else IntMatrix(m)))
    return out


def generate(degree, generators, element_cap=DEFAULT_ELEMENT_CAP):
    """Enumerate the group generated by ``generators`` (dict or (name, matrix) list)."""
    if element_cap < 1:
        raise InvalidParameter("element cap must be positive")
    named = _named(generators)
    for name, m in named:
        if m.shape != (degree, degree):
            raise InvalidParameter(f"generator {name!r} has shape {m.shape}, expected {(degree, degree)}")
        if m.det() not in (1, -1):
            raise NotUnimodular(f"generator {name!r} has determinant {m.det()}")
    ident = IntMatrix.identity(degree)
    elements, words, tree = [ident], [()], [(None, None)]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for k, (_, m) in enumerate(named):
            y = elements[x] @ m
            if y not in index:
                if len(elements) >= element_cap:
                    raise NotFinite(f"more than {element_cap} elements; group may be infinite")
                index[y] = len(elements)
                elements.append(y)
                words.append(words[x] + (k,))
                tree.append((x, k))
                queue.append(index[y])
    return FiniteMatrixGroup(degree, [n for n, _ in named], [m for _, m in named],
                             elements, words, tree)


def subgroups(g):
    return g.subgroups()


def direct_product_action(a, b, element_cap=DEFAULT_ELEMENT_CAP):
    """The group generated by two commuting matrix groups of the same degree."""
    if a.degree != b.degree:
        raise InvalidParameter("factors have different degrees")
    for x in a.elements:
        for y in b.elements:
            if x @ y != y @ x:
                raise NotCommuting("factor elements do not commute")
    names = list(a.generator_names)
    gens = list(zip(a.generator_names, a.generators))
    for n, m in zip(b.generator_names, b.generators):
        while n in names:
            n += "'"
        names.append(n)
        gens.append((n, m))
    g = generate(a.degree, gens, element_cap=element_cap)
    g.factors = (a, b)
    return g


def abelian_invariants(g):
    """Invariant factors of an abelian matrix group."""
    if not g.is_abelian():
        raise NotAbelian("group is not abelian")
    k = len(g.generators)
    if k == 0:
        return FiniteAbelianGroup()
    # Exponent vectors along the BFS tree; relations from every (element, generator) edge.
    vec = [None] * g.order
    vec[0] = (0,) * k
    for i in range(1, g.order):
        p, gen = g._tree[i]
        v = list(vec[p])
        v[gen] += 1
        vec[i] = tuple(v)
    rels = []
    for i in range(g.order):
        for gen, gi in enumerate(g.generator_indices):
            j = g.mul_table[i][gi]
            r = [a - b for a, b in zip(vec[i], vec[j])]
            r[gen] += 1
            if any(r):
                rels.append(r)
    res = quotient_structure(IntMatrix.identity(k), IntMatrix.from_columns(rels, k) if rels else IntMatrix.zeros(k, 0))
    return res


def check_normal(u):
    if not u.is_normal():
        raise NotNormal("subgroup is not normal")
