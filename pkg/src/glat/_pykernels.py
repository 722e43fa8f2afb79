"""Pure-Python integer kernels.

These are the reference implementations of the hot routines used by
:mod:`glat.zlinalg` and :mod:`glat.cohomology`.  The compiled module ``glat._core`` exposes the same
functions with identical results; this module is used when the extension is
missing, when ``GLAT_PURE_PYTHON`` is set, or when the compiled code reports an
int64 overflow.

Matrix inputs are dense lists of lists of Python ints and are never mutated.
"""

import heapq


def xgcd(a, b):
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(rows, ncols):
    """Row Hermite normal form of the row lattice.

    Returns the nonzero rows, ordered by pivot column, with positive pivots
    and entries above each pivot reduced into ``[0, pivot)``.
    """
    basis = {}  # pivot column -> row
    for src in rows:
        vec = list(src)
        j = 0
        while True:
            while j < ncols and not vec[j]:
                j += 1
            if j == ncols:
                break
            row = basis.get(j)
            if row is None:
                basis[j] = vec
                break
            a = row[j]
            b = vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, ncols):
                    if row[k]:
                        vec[k] -= q * row[k]
            else:
                x, y, g = xgcd(a, b)
                ag = a // g
                bg = b // g
                for k in range(j, ncols):
                    r_k = row[k]
                    v_k = vec[k]
                    row[k] = x * r_k + y * v_k
                    vec[k] = ag * v_k - bg * r_k
            j += 1
    pivots = sorted(basis)
    out = [basis[p] for p in pivots]
    for i, p in enumerate(pivots):
        row = out[i]
        if row[p] < 0:
            for k in range(p, ncols):
                row[k] = -row[k]
        piv = row[p]
        for i2 in range(i):
            upper = out[i2]
            q = upper[p] // piv
            if q:
                for k in range(p, ncols):
                    if row[k]:
                        upper[k] -= q * row[k]
    return out


def _dense_kernel(rows, ncols):
    # Column reduction of [rows; I]; columns past the rank span the kernel.
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] + [int(i == j) for i in range(ncols)]
            for j in range(ncols)]
    r = 0
    for i in range(m):
        if r == ncols:
            break
        while True:
            nz = [j for j in range(r, ncols) if cols[j][i]]
            if not nz:
                break
            piv = min(nz, key=lambda j: (abs(cols[j][i]), j))
            cols[r], cols[piv] = cols[piv], cols[r]
            pc = cols[r]
            a = pc[i]
            clean = True
            for j in range(r + 1, ncols):
                cj = cols[j]
                if cj[i]:
                    q = cj[i] // a
                    for k in range(i, m + ncols):
                        if pc[k]:
                            cj[k] -= q * pc[k]
                    if cj[i]:
                        clean = False
            if clean:
                r += 1
                break
    return [cols[j][m:] for j in range(r, ncols)]


def kernel(rows, ncols):
    """A Z-basis of ``{x : rows * x = 0}`` (not canonicalized)."""
    sparse = []
    for r in rows:
        d = {j: v for j, v in enumerate(r) if v}
        if d:
            sparse.append(d)
    return sparse_kernel(sparse, ncols)


def cocycle_kernel(actions, table, members, rank):
    """Kernel of the bar differential C^1 -> C^2 on ``members``.

    ``actions[x]`` is the action matrix (list of rows) of parent element x and
    ``table`` the parent multiplication table.  Column ``k * rank + i`` is
    coordinate i of the cochain value at ``members[k]``.
    """
    pos = {x: k for k, x in enumerate(members)}
    nz = {x: [[(j, v) for j, v in enumerate(row) if v] for row in actions[x]] for x in members}
    rows = []
    for g in members:
        ag = nz[g]
        bg = pos[g] * rank
        for h in members:
            bh = pos[h] * rank
            bgh = pos[table[g][h]] * rank
            for i in range(rank):
                d = {bh + j: v for j, v in ag[i]}
                c = bgh + i
                d[c] = d.get(c, 0) - 1
                c = bg + i
                d[c] = d.get(c, 0) + 1
                d = {j: v for j, v in d.items() if v}
                if d:
                    rows.append(d)
    return sparse_kernel(rows, len(members) * rank)


def sparse_kernel(rows, ncols):
    """Kernel of a matrix given as sparse rows ``{col: value}``.

    Eliminates on unit pivots first (this clears almost every bar-complex
    row); whatever is left goes through dense column reduction.
    """
    live = {}
    seen = set()
    for d in rows:
        key = tuple(sorted(d.items()))
        if key in seen:
            continue
        seen.add(key)
        live[len(live)] = dict(d)
    col_rows = {}
    for rid, d in live.items():
        for j in d:
            col_rows.setdefault(j, set()).add(rid)

    subs = []  # (col, expr) with x_col = sum expr[j] * x_j
    heap = [(len(d), rid) for rid, d in live.items()]
    heapq.heapify(heap)
    stuck = set()
    while heap:
        ln, rid = heapq.heappop(heap)
        d = live.get(rid)
        if d is None or len(d) != ln:
            continue
        units = [j for j, v in d.items() if v == 1 or v == -1]
        if not units:
            stuck.add(rid)
            continue
        c = min(units, key=lambda j: (len(col_rows[j]), j))
        u = d[c]
        del live[rid]
        for j in d:
            col_rows[j].discard(rid)
        expr = {j: -u * v for j, v in d.items() if j != c}
        subs.append((c, expr))
        for other in list(col_rows[c]):
            od = live[other]
            f = od.pop(c)
            for j, v in expr.items():
                nv = od.get(j, 0) + f * v
                if nv:
                    if j not in od:
                        col_rows[j].add(other)
                    od[j] = nv
                elif j in od:
                    del od[j]
                    col_rows[j].discard(other)
            if not od:
                del live[other]
                stuck.discard(other)
            else:
                stuck.discard(other)
                heapq.heappush(heap, (len(od), other))
        col_rows[c] = set()

    eliminated = {c for c, _ in subs}
    rest_rows = [live[rid] for rid in sorted(stuck) if rid in live]
    rest_cols = sorted({j for d in rest_rows for j in d})
    in_rest = set(rest_cols)
    free = [j for j in range(ncols) if j not in eliminated and j not in in_rest]

    params = []
    if rest_cols:
        pos = {j: i for i, j in enumerate(rest_cols)}
        dense = []
        for d in rest_rows:
            row = [0] * len(rest_cols)
            for j, v in d.items():
                row[pos[j]] = v
            dense.append(row)
        for vec in _dense_kernel(dense, len(rest_cols)):
            params.append({rest_cols[i]: v for i, v in enumerate(vec) if v})
    for j in free:
        params.append({j: 1})

    out = []
    for p in params:
        x = [0] * ncols
        for j, v in p.items():
            x[j] = v
        for c, expr in reversed(subs):
            s = 0
            for j, v in expr.items():
                xj = x[j]
                if xj:
                    s += v * xj
            x[c] = s
        out.append(x)
    return out


def snf(rows, nrows, ncols):
    """Smith normal form with transforms: returns ``(left, diag, right)``.

    ``left * A * right`` is diagonal with entries ``diag`` (length
    ``min(nrows, ncols)``, nonnegative, each dividing the next).  Pivots are
    chosen with minimal absolute value.
    """
    a = [list(r) for r in rows]
    left = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    right = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        ra, sa = a[dst], a[src]
        for k in range(ncols):
            if sa[k]:
                ra[k] -= q * sa[k]
        rl, sl = left[dst], left[src]
        for k in range(nrows):
            if sl[k]:
                rl[k] -= q * sl[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        for r in right:
            if r[src]:
                r[dst] -= q * r[src]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            ri = a[i]
            for j in range(t, ncols):
                v = ri[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
            best = None
            for i in range(t + 1, nrows):
                v = a[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, 0)
            for j in range(t + 1, ncols):
                v = a[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), 0, j)
            if best is not None:
                _, bi, bj = best
                if bi:
                    swap_rows(t, bi)
                else:
                    swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, nrows):
                ri = a[i]
                for j in range(t + 1, ncols):
                    if ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            left[t] = [-v for v in left[t]]
        t += 1
    diag = [a[i][i] for i in range(min(nrows, ncols))]
    return left, diag, right
