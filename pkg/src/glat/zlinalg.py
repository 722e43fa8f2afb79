"""Exact linear algebra over the integers.

Everything here works with Python ints, so entries never overflow.  The heavy
routines (row Hermite form, kernels, Smith form) are delegated to
:mod:`glat._backend`, which picks a compiled or pure-Python implementation.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod

import numpy as np

from . import _backend
from .errors import SubNotContained

_INT64_SAFE = 1 << 62


class IntMatrix:
    """An immutable dense integer matrix."""

    __slots__ = ("rows", "nrows", "ncols", "_hash", "_maxabs")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None
        self._maxabs = None

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [tuple(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def diagonal(cls, entries, nrows=None, ncols=None):
        k = len(entries)
        nrows = k if nrows is None else nrows
        ncols = k if ncols is None else ncols
        return cls([[entries[i] if i == j and i < k else 0 for j in range(ncols)]
                    for i in range(nrows)], ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self):
        return IntMatrix(zip(*self.rows), self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def maxabs(self):
        if self._maxabs is None:
            self._maxabs = max((abs(v) for r in self.rows for v in r), default=0)
        return self._maxabs

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.nrows == 0 or other.ncols == 0:
            return IntMatrix.zeros(self.nrows, other.ncols)
        if self.maxabs() * other.maxabs() * max(self.ncols, 1) < _INT64_SAFE:
            a = np.array(self.rows, dtype=np.int64).reshape(self.shape)
            b = np.array(other.rows, dtype=np.int64).reshape(other.shape)
            return IntMatrix((a @ b).tolist(), other.ncols)
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(x * y for x, y in zip(r, c)) for c in cols]
                          for r in self.rows], other.ncols)

    def apply(self, vec):
        return tuple(sum(x * y for x, y in zip(r, vec)) for r in self.rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.ncols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.ncols)

    def __neg__(self):
        return IntMatrix([[-x for x in r] for r in self.rows], self.ncols)

    def scale(self, c):
        return IntMatrix([[c * x for x in r] for r in self.rows], self.ncols)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def det(self):
        """Exact determinant by fraction-free Bareiss elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                ri, rk = a[i], a[k]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.nrows == self.ncols and self.det() in (1, -1)


def hstack(mats, nrows=None):
    mats = list(mats)
    if nrows is None:
        nrows = mats[0].nrows if mats else 0
    ncols = sum(m.ncols for m in mats)
    return IntMatrix([sum((m.rows[i] for m in mats), ()) for i in range(nrows)], ncols)


def vstack(mats, ncols=None):
    mats = list(mats)
    if ncols is None:
        ncols = mats[0].ncols if mats else 0
    return IntMatrix([r for m in mats for r in m.rows], ncols)


def block_diag(mats):
    mats = list(mats)
    n = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append((0,) * off + r + (0,) * (n - off - m.ncols))
        off += m.ncols
    return IntMatrix(rows, n)


@dataclass(frozen=True)
class SmithForm:
    left: IntMatrix
    diag: tuple
    right: IntMatrix

    @property
    def rank(self):
        return sum(1 for d in self.diag if d)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finitely generated abelian group ``Z^free_rank + sum Z/d_i``."""

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_orders(cls, orders, free_rank=0):
        """Normalize ``Z/o_1 + ... + Z/o_k`` (orders 0 mean a copy of Z)."""
        orders = [abs(int(o)) for o in orders]
        zeros = sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls((), free_rank + zeros)
        sf = smith_normal_form(IntMatrix.diagonal(finite))
        return cls(tuple(d for d in sf.diag if d > 1), free_rank + zeros)

    @property
    def order(self):
        """Group order, or ``None`` when infinite."""
        return None if self.free_rank else prod(self.invariant_factors)

    @property
    def exponent(self):
        if self.free_rank:
            return 0
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors and not self.free_rank

    def __add__(self, other):
        return FiniteAbelianGroup.from_orders(
            self.invariant_factors + other.invariant_factors,
            self.free_rank + other.free_rank)

    def __str__(self):
        if self.is_trivial():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        if self.invariant_factors:
            parts.append("(" + ",".join(map(str, self.invariant_factors)) + ")")
        return " + ".join(parts)


def smith_normal_form(a):
    left, diag, right = _backend.snf([list(r) for r in a.rows], a.nrows, a.ncols)
    return SmithForm(IntMatrix(left, a.nrows), tuple(diag), IntMatrix(right, a.ncols))


def hermite_rows(vectors, ncols):
    """Row Hermite normal form of the lattice spanned by ``vectors``."""
    return [tuple(r) for r in _backend.hnf([list(v) for v in vectors], ncols)]


def hermite_basis(a):
    """Hermite-reduced basis of the column lattice of ``a``, as columns."""
    return IntMatrix.from_columns(hermite_rows(a.columns(), a.nrows), a.nrows)


def rank(a):
    return len(hermite_rows(a.rows, a.ncols))


def kernel_basis(a):
    """Saturated basis of ``{x : a x = 0}``, columns in Hermite-reduced form."""
    if a.nrows == 0:
        return IntMatrix.identity(a.ncols)
    raw = _backend.kernel([list(r) for r in a.rows], a.ncols)
    return IntMatrix.from_columns(hermite_rows(raw, a.ncols), a.ncols)


def _reduce_against(ambient, sub):
    # Row-reduce [ambient | sub] so the ambient part becomes echelon with
    # full row rank; the sub part is carried along unchanged as a lattice.
    k = ambient.ncols
    rows = [ra + rs for ra, rs in zip(ambient.rows, sub.rows)]
    h = hermite_rows(rows, k + sub.ncols)
    top = []
    for r in h:
        if any(r[:k]):
            top.append(r)
        elif any(r[k:]):
            raise SubNotContained("generator outside the rational span of the ambient lattice")
    return [r[:k] for r in top], [r[k:] for r in top]


def _solve_lower(basis_t, rhs_cols, rho):
    # basis_t rows are an upper-triangular square echelon (the transposed
    # basis); solve basis * y = rhs column by column.
    out = []
    for s in rhs_cols:
        y = [0] * rho
        for i in range(rho):
            acc = s[i] - sum(basis_t[j][i] * y[j] for j in range(i))
            piv = basis_t[i][i]
            if acc % piv:
                raise SubNotContained("generator outside the ambient lattice")
            y[i] = acc // piv
        out.append(y)
    return out


def quotient_structure(ambient_basis, sub_generators):
    """Isomorphism type of span(ambient_basis) / span(sub_generators)."""
    if ambient_basis.nrows != sub_generators.nrows:
        raise ValueError("ambient and sub live in different spaces")
    a_top, s_top = _reduce_against(ambient_basis, sub_generators)
    rho = len(a_top)
    if rho == 0:
        return FiniteAbelianGroup()
    # Hermite basis of the full-rank column lattice of a_top inside Z^rho.
    bt = hermite_rows(list(zip(*a_top)), rho)
    s_cols = list(zip(*s_top)) if sub_generators.ncols else []
    y = _solve_lower(bt, s_cols, rho)
    if not y:
        return FiniteAbelianGroup((), rho)
    sf = smith_normal_form(IntMatrix.from_columns(y, rho))
    factors = tuple(d for d in sf.diag if d > 1)
    return FiniteAbelianGroup(factors, rho - sf.rank)


def solve_in_basis(basis, vectors):
    """Coordinates ``Y`` with ``basis @ Y == vectors`` for an independent basis."""
    if basis.ncols == 0:
        if not vectors.is_zero():
            raise SubNotContained("nonzero vector in the zero lattice")
        return IntMatrix.zeros(0, vectors.ncols)
    a_top, s_top = _reduce_against(basis, vectors)
    k = basis.ncols
    if len(a_top) != k:
        raise ValueError("basis columns are not independent")
    # a_top is upper triangular k x k: back substitution.
    cols = []
    for j in range(vectors.ncols):
        y = [0] * k
        for i in reversed(range(k)):
            acc = s_top[i][j] - sum(a_top[i][t] * y[t] for t in range(i + 1, k))
            if acc % a_top[i][i]:
                raise SubNotContained("vector outside the lattice")
            y[i] = acc // a_top[i][i]
        cols.append(y)
    return IntMatrix.from_columns(cols, k)


def is_saturated(basis):
    """True iff span(basis) is a direct summand of the ambient Z^n."""
    sf = smith_normal_form(basis)
    return all(d in (0, 1) for d in sf.diag)


def same_lattice(a, b):
    return hermite_rows(a.columns(), a.nrows) == hermite_rows(b.columns(), b.nrows)


def vector_gcd(v):
    return reduce(gcd, v, 0)
