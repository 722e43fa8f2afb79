"""Coflasque covers, flasque resolutions and the stable-permutation obstruction.

The cover of a lattice M is the sum over conjugacy classes of subgroups U of
``Z[G/U] (x) M^U``, mapped to M by ``xU (x) v -> x.v``.  It is onto on
U-fixed points for every U, which is what makes the kernel coflasque.  A
flasque resolution of M is the dual of the cover of the dual of M.

Verdicts follow one rule: a nonzero H^1 of the lattice or its dual on some
subgroup proves the lattice is not stably permutation.  Trivial H^1 tables
prove nothing, so in that case the bounded search either exhibits an
explicit isomorphism ``N + P = Q`` or reports that it ran out of budget.
"""

from dataclasses import dataclass, field

from .cohomology import h1_profile
from .errors import GroupMismatch, InvariantViolation
from .lattices import (GLattice, direct_sum_all, dual, equivariant_iso_search,
                       identify_groups, is_permutation_in_basis, permutation_lattice, transport,
                       verify_isomorphism)
from .zlinalg import IntMatrix, hermite_rows, kernel_basis, quotient_structure, same_lattice, smith_normal_form

DEFAULT_COEFF_BOUND = 3
DEFAULT_RANK_PADDING = 8
DEFAULT_MAX_TRIALS = 100000
# Above this rank the space of equivariant maps is too large to search.
SEARCH_RANK_LIMIT = 24


def _coset_reps(g, u):
    seen, reps = set(), []
    for x in range(g.order):
        if x not in seen:
            reps.append(x)
            seen.update(g.mul_table[x][m] for m in u.members)
    return reps


@dataclass
class CoflasqueCover:
    p: GLattice
    cover: IntMatrix
    kernel: GLattice
    kernel_embedding: IntMatrix


def coflasque_cover(m, verify=True):
    """Permutation lattice P with an equivariant map onto M, onto on U-fixed points for all U.

    Subgroup classes are visited from the largest down; for each, a summand
    ``Z[G/U]`` is added for every Hermite basis vector of ``M^U`` that the
    summands chosen so far do not already reach on U-fixed points.
    """
    g = m.group
    summands, columns = [], []
    for u in reversed(g.conjugacy_representatives()):
        gens = u.generators()
        fb = m.fixed_basis(gens)
        if fb.ncols == 0:
            continue
        perm = permutation_lattice(g, u)
        reps = _coset_reps(g, u)
        reached = _fixed_image(m, summands, columns, gens)
        for j, b in enumerate(fb.columns()):
            if reached is not None and _in_span(reached, b, m.rank):
                continue
            bm = IntMatrix.from_columns([b], m.rank)
            summands.append(GLattice(g, perm.action, [f"{lab}.b{j}" for lab in perm.labels],
                                     name=perm.name, check=False))
            columns.extend((m.action[x] @ bm).column(0) for x in reps)
            reached = _fixed_image(m, summands, columns, gens)
    p = direct_sum_all(summands, g, name="P")
    cover = IntMatrix.from_columns(columns, m.rank) if columns else IntMatrix.zeros(m.rank, 0)
    emb = kernel_basis(cover)
    kernel = p.sublattice(emb, name=f"ker({m.name})")
    result = CoflasqueCover(p, cover, kernel, emb)
    if verify:
        _verify_cover(m, result)
    return result


def _fixed_image(m, summands, columns, gens):
    # Hermite rows spanning cover(P^U) for the summands chosen so far.
    if not summands:
        return None
    p = direct_sum_all(summands, m.group)
    cover = IntMatrix.from_columns(columns, m.rank)
    return hermite_rows((cover @ p.fixed_basis(gens)).columns(), m.rank)


def _in_span(hrows, v, ncols):
    return hermite_rows(list(hrows) + [v], ncols) == hrows


def _verify_cover(m, c):
    for x in range(m.group.order):
        if c.cover @ c.p.action[x] != m.action[x] @ c.cover:
            raise InvariantViolation("cover map is not equivariant")
    if not quotient_structure(IntMatrix.identity(m.rank), c.cover).is_trivial():
        raise InvariantViolation("cover map is not surjective")
    for u in m.group.subgroups():
        gens = u.generators()
        pu = c.p.fixed_basis(gens)
        mu = m.fixed_basis(gens)
        if not quotient_structure(mu, c.cover @ pu).is_trivial():
            raise InvariantViolation(f"cover is not onto fixed points of <{','.join(u.generator_words())}>")
    ok, witness = is_coflasque(c.kernel)
    if not ok:
        raise InvariantViolation("kernel of the coflasque cover is not coflasque")


@dataclass
class FlasqueResolution:
    m: GLattice
    s: GLattice
    f: GLattice
    inject: IntMatrix
    project: IntMatrix


def flasque_resolution(m, verify=True):
    """``0 -> M -> S -> F -> 0`` with S permutation and F flasque."""
    if is_permutation_in_basis(m):
        zero = GLattice(m.group, [IntMatrix.identity(0)] * m.group.order, [], name="0", check=False)
        res = FlasqueResolution(m, m, zero, IntMatrix.identity(m.rank), IntMatrix.zeros(0, m.rank))
    else:
        c = coflasque_cover(dual(m), verify=verify)
        s = GLattice(m.group, c.p.action, c.p.labels, name="S", check=False)
        f = dual(c.kernel)
        f.name = f"F({m.name})"
        res = FlasqueResolution(m, s, f, c.cover.T, c.kernel_embedding.T)
    if verify:
        verify_resolution(res)
    return res


def verify_resolution(res):
    m, s, f = res.m, res.s, res.f
    if m.rank + f.rank != s.rank:
        raise InvariantViolation("ranks of the resolution do not add up")
    if not is_permutation_in_basis(s):
        raise InvariantViolation("middle term is not a permutation lattice")
    for x in range(m.group.order):
        if res.inject @ m.action[x] != s.action[x] @ res.inject:
            raise InvariantViolation("injection is not equivariant")
        if res.project @ s.action[x] != f.action[x] @ res.project:
            raise InvariantViolation("projection is not equivariant")
    if not (res.project @ res.inject).is_zero():
        raise InvariantViolation("project . inject != 0")
    diag = smith_normal_form(res.inject).diag
    if m.rank and (len(diag) != m.rank or any(d != 1 for d in diag)):
        raise InvariantViolation("injection is not injective with saturated image")
    if f.rank and not quotient_structure(IntMatrix.identity(f.rank), res.project).is_trivial():
        raise InvariantViolation("projection is not surjective")
    if m.rank and not same_lattice(res.inject, kernel_basis(res.project)):
        raise InvariantViolation("image of the injection is not the kernel of the projection")
    ok, _ = is_flasque(f)
    if not ok:
        raise InvariantViolation("F is not flasque")


def is_coflasque(n):
    """``(True, None)`` if H^1 vanishes on every subgroup, else ``(False, witness)``."""
    hit = h1_profile(n).largest_nontrivial()
    return (True, None) if hit is None else (False, hit[0])


def is_flasque(n):
    return is_coflasque(dual(n))


# -- bounded search for N + P = Q ------------------------------------------------


def _marks(lat, subs):
    # Fixed ranks; for Z[G/V] this is the number of U-orbits on G/V.
    return tuple(lat.fixed_rank(u) for u in subs)


def _multiplicities(table, target, limit=None):
    """All nonnegative integer ``c`` with ``sum_i c_i table[i] == target``.

    The rows are fixed-rank vectors of the Z[G/U]; they need not be linearly
    independent, so this enumerates every solution (depth first, larger
    multiplicities of earlier rows first).  Entries of every row are positive
    (the trivial subgroup is always present), which bounds the search.
    """
    k = len(table)
    c = [0] * k
    out = []

    def rec(i, rest):
        if limit is not None and len(out) >= limit:
            return
        if not any(rest):
            out.append(tuple(c))
            return
        if i == k:
            return
        row = table[i]
        most = min(r // v for r, v in zip(rest, row) if v)
        for m in range(most, -1, -1):
            c[i] = m
            rec(i + 1, [r - m * v for r, v in zip(rest, row)])
        c[i] = 0

    if all(t >= 0 for t in target):
        rec(0, list(target))
    return out


def _paddings(sizes, max_rank):
    # Multisets of summand indices with total rank <= max_rank, by (rank, tuple).
    out = []

    def rec(start, chosen, total):
        out.append((total, tuple(chosen)))
        for i in range(start, len(sizes)):
            if total + sizes[i] <= max_rank:
                chosen.append(i)
                rec(i, chosen, total + sizes[i])
                chosen.pop()

    rec(0, [], 0)
    out.sort()
    return [c for _, c in out]


def _permutation_decomposition(a, reps, perms):
    """For a lattice permuted in its basis: summand indices and an iso onto their sum."""
    g = a.group
    # basis vector -> the vector it is sent to by each group element
    act = [[row.index(1) for row in zip(*m.rows)] for m in a.action]
    seen, order, cols = set(), [], []
    for e in range(a.rank):
        if e in seen:
            continue
        orbit = {act[x][e] for x in range(g.order)}
        seen |= orbit
        # pick the orbit point whose stabilizer is a chosen class representative
        for f in sorted(orbit):
            stab = tuple(x for x in range(g.order) if act[x][f] == f)
            hit = [i for i, u in enumerate(reps) if u.members == stab]
            if hit:
                break
        else:
            raise InvariantViolation("stabilizer is not a listed subgroup")
        i = hit[0]
        order.append(i)
        for x in _coset_reps(g, reps[i]):
            cols.append(act[x][f])
    # witness maps a's basis onto the concatenated coset bases
    x = [[0] * a.rank for _ in range(a.rank)]
    for new, old in enumerate(cols):
        x[new][old] = 1
    return order, IntMatrix(x, a.rank)


@dataclass
class SearchRecord:
    status: str  # "proven" | "unknown"
    rank_bound: int
    coeff_bound: int
    detail: str = ""
    left_padding: tuple = ()
    right_padding: tuple = ()
    witness: IntMatrix = None
    candidates: int = 0


def _padding_search(a, b, rank_bound, coeff_bound, max_trials):
    """Search ``a + P = b + Q`` over permutation paddings; ``b`` may be None (Q alone)."""
    g = a.group
    reps = g.conjugacy_representatives()
    subs = g.subgroups()
    perms = [permutation_lattice(g, u) for u in reps]
    names = [p.name for p in perms]
    record = SearchRecord("unknown", rank_bound, coeff_bound)
    if b is None and is_permutation_in_basis(a):
        qpad, x = _permutation_decomposition(a, reps, perms)
        q = direct_sum_all([perms[i] for i in qpad], g)
        if not verify_isomorphism(a, q, x):
            raise InvariantViolation("orbit decomposition is not an isomorphism")
        record.status = "proven"
        record.right_padding = tuple(names[i] for i in qpad)
        record.witness = x
        record.detail = "lattice permutes its basis; orbit decomposition"
        return record
    table = [_marks(p, subs) for p in perms]
    ma = _marks(a, subs)
    mb = _marks(b, subs) if b is not None else (0,) * len(subs)
    candidates = 0
    skipped = 0
    trials_left = max_trials
    for pad in _paddings([p.rank for p in perms], rank_bound - a.rank):
        target = [x - y + sum(table[i][j] for i in pad) for j, (x, y) in enumerate(zip(ma, mb))]
        left = None
        for mult in _multiplicities(table, target):
            qpad = tuple(i for i, c in enumerate(mult) for _ in range(c))
            candidates += 1
            if a.rank + sum(perms[i].rank for i in pad) > SEARCH_RANK_LIMIT:
                skipped += 1
                continue
            if left is None:
                left = direct_sum_all([a] + [perms[i] for i in pad], g)
            right = direct_sum_all(([b] if b is not None else []) + [perms[i] for i in qpad], g)
            res = equivariant_iso_search(left, right, coeff_bound, max_trials=trials_left,
                                         check_invariants=False)
            trials_left -= res.trials
            if res.proven:
                record.status = "proven"
                record.left_padding = tuple(names[i] for i in pad)
                record.right_padding = tuple(names[i] for i in qpad)
                record.witness = res.witness
                record.candidates = candidates
                record.detail = f"isomorphism found at candidate {candidates}"
                return record
            if trials_left <= 0:
                break
        if trials_left <= 0:
            break
    record.candidates = candidates
    parts = [f"{candidates} candidate paddings with matching fixed ranks"]
    if skipped:
        parts.append(f"{skipped} above search rank limit {SEARCH_RANK_LIMIT}")
    if trials_left <= 0:
        parts.append(f"trial budget {max_trials} exhausted")
    elif candidates > skipped:
        parts.append(f"no witness with coefficients in [-{coeff_bound},{coeff_bound}]")
    record.detail = "; ".join(parts)
    return record


@dataclass
class ObstructionReport:
    lattice: GLattice
    profile_n: object
    profile_dual: object
    verdict: str  # "NotStablyPermutation" | "ConsistentWithStablyPermutation"
    witness: tuple = None  # (side, subgroup, group value)
    search: SearchRecord = None

    @property
    def name(self):
        return self.lattice.name


def default_rank_bound(n):
    return n.rank + DEFAULT_RANK_PADDING


def stably_permutation_verdict(n, rank_bound=None, coeff_bound=DEFAULT_COEFF_BOUND,
                               max_trials=DEFAULT_MAX_TRIALS, search=True):
    if rank_bound is None:
        rank_bound = default_rank_bound(n)
    pn = h1_profile(n)
    pd = h1_profile(dual(n))
    for side, prof in (("N", pn), ("N°", pd)):
        hit = prof.largest_nontrivial()
        if hit is not None:
            return ObstructionReport(n, pn, pd, "NotStablyPermutation", (side, hit[0], hit[1]))
    report = ObstructionReport(n, pn, pd, "ConsistentWithStablyPermutation")
    if search:
        report.search = _padding_search(n, None, rank_bound, coeff_bound, max_trials)
    return report


@dataclass
class SimilarityResult:
    status: str  # "similar" | "not_similar" | "unknown"
    differences: list = field(default_factory=list)  # (side, subgroup, value_a, value_b)
    search: SearchRecord = None


def similarity_verdict(a, b, rank_bound=None, coeff_bound=DEFAULT_COEFF_BOUND,
                       identification=None, max_trials=DEFAULT_MAX_TRIALS):
    """Decide (boundedly) whether ``a + P = b + Q`` for permutation lattices P, Q.

    If the lattices live over different group objects, ``identification``
    maps element indices of ``a.group`` to those of ``b.group``; by default
    generators are matched by position and the match is checked.
    """
    if a.group is not b.group:
        if identification is None:
            identification = identify_groups(a.group, b.group)
        else:
            identification = tuple(identification)
            t, u = a.group.mul_table, b.group.mul_table
            if len(identification) != a.group.order or any(
                    identification[t[i][j]] != u[identification[i]][identification[j]]
                    for i in range(a.group.order) for j in range(a.group.order)):
                raise GroupMismatch("supplied identification is not a group isomorphism")
        b = transport(b, a.group, identification)
    if rank_bound is None:
        rank_bound = max(a.rank, b.rank) + DEFAULT_RANK_PADDING
    diffs = []
    for side, (x, y) in (("N", (a, b)), ("N°", (dual(a), dual(b)))):
        pa, pb = h1_profile(x), h1_profile(y)
        for u in a.group.subgroups():
            if pa[u] != pb[u]:
                diffs.append((side, u, pa[u], pb[u]))
    if diffs:
        return SimilarityResult("not_similar", diffs)
    if a.action == b.action:
        rec = SearchRecord("proven", rank_bound, coeff_bound, "identical actions",
                           witness=IntMatrix.identity(a.rank))
        return SimilarityResult("similar", search=rec)
    rec = _padding_search(a, b, rank_bound, coeff_bound, max_trials)
    return SimilarityResult("similar" if rec.status == "proven" else "unknown", search=rec)
