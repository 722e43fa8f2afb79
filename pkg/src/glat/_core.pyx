# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 versions of the kernels in ``glat._pykernels``.

Every multiply/add is overflow-checked; on overflow the functions raise
``OverflowError`` and ``glat._backend`` reruns the pure-Python version.
``hnf`` and ``snf`` perform the same operation sequence as the Python code,
so results (including Smith transforms) agree exactly.  ``kernel`` uses a
different, dense algorithm; callers canonicalize its output.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "_checked.h" nogil:
    bint glat_mul(long long a, long long b, long long *out)
    bint glat_add(long long a, long long b, long long *out)
    bint glat_submul(long long a, long long q, long long b, long long *out)
    bint glat_lincomb(long long x, long long a, long long y, long long b, long long *out)
    long long glat_floordiv(long long a, long long b)


cdef inline long long _abs(long long v) nogil:
    return -v if v < 0 else v


cdef bint _xgcd(long long a, long long b, long long *x, long long *y, long long *g) nogil:
    cdef long long x0 = 1, nx = 0, y0 = 0, ny = 1, g0 = a, ng = b, q, t
    while ng != 0:
        q = glat_floordiv(g0, ng)
        if glat_submul(x0, q, nx, &t):
            return 1
        x0 = nx
        nx = t
        if glat_submul(y0, q, ny, &t):
            return 1
        y0 = ny
        ny = t
        t = g0 - q * ng
        g0 = ng
        ng = t
    if g0 < 0:
        x0 = -x0
        y0 = -y0
        g0 = -g0
    x[0] = x0
    y[0] = y0
    g[0] = g0
    return 0


def _as_array(rows, Py_ssize_t nrows, Py_ssize_t ncols):
    arr = np.zeros((nrows, ncols), dtype=np.int64)
    if nrows and ncols:
        arr[:, :] = np.array(rows, dtype=np.int64).reshape(nrows, ncols)
    return arr


cdef int _hnf_core(long long[:, ::1] a, long long[:, ::1] basis, Py_ssize_t[::1] piv,
                   long long[::1] vec) nogil:
    """Insert rows of ``a`` into ``basis``; ``piv[j]`` is the row with pivot j or -1.

    Returns the number of basis rows, or -1 on overflow.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t i, j, k, p, count = 0
    cdef long long av, bv, q, x, y, g, ag, bg, rk, vk, t1, t2
    for i in range(m):
        for k in range(n):
            vec[k] = a[i, k]
        j = 0
        while True:
            while j < n and vec[j] == 0:
                j += 1
            if j == n:
                break
            p = piv[j]
            if p < 0:
                for k in range(n):
                    basis[count, k] = vec[k]
                piv[j] = count
                count += 1
                break
            av = basis[p, j]
            bv = vec[j]
            if bv % av == 0:
                q = bv / av
                for k in range(j, n):
                    if basis[p, k] != 0:
                        if glat_submul(vec[k], q, basis[p, k], &vec[k]):
                            return -1
            else:
                if _xgcd(av, bv, &x, &y, &g):
                    return -1
                ag = av / g
                bg = bv / g
                for k in range(j, n):
                    rk = basis[p, k]
                    vk = vec[k]
                    if glat_lincomb(x, rk, y, vk, &t1):
                        return -1
                    if glat_lincomb(ag, vk, -bg, rk, &t2):
                        return -1
                    basis[p, k] = t1
                    vec[k] = t2
            j += 1
    return count


cdef int _hnf_normalize(long long[:, ::1] basis, Py_ssize_t[::1] piv, Py_ssize_t n,
                        long long[:, ::1] out) nogil:
    """Copy basis rows into ``out`` by pivot order, make pivots positive, reduce above."""
    cdef Py_ssize_t j, k, r = 0, i2, p
    cdef long long q, pv
    for j in range(n):
        if piv[j] >= 0:
            for k in range(n):
                out[r, k] = basis[piv[j], k]
            r += 1
    r = 0
    for p in range(n):
        if piv[p] < 0:
            continue
        if out[r, p] < 0:
            for k in range(p, n):
                out[r, k] = -out[r, k]
        pv = out[r, p]
        for i2 in range(r):
            q = glat_floordiv(out[i2, p], pv)
            if q != 0:
                for k in range(p, n):
                    if out[r, k] != 0:
                        if glat_submul(out[i2, k], q, out[r, k], &out[i2, k]):
                            return 1
        r += 1
    return 0


def _hnf_array(rows, Py_ssize_t ncols):
    if isinstance(rows, np.ndarray):
        a = np.ascontiguousarray(rows, dtype=np.int64)
    else:
        a = _as_array(rows, len(rows), ncols)
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t cap = min(m, ncols)
    basis = np.zeros((max(cap, 1), max(ncols, 1)), dtype=np.int64)
    piv = np.full(max(ncols, 1), -1, dtype=np.intp)
    vec = np.zeros(max(ncols, 1), dtype=np.int64)
    cdef long long[:, ::1] av = a
    cdef long long[:, ::1] bv = basis
    cdef Py_ssize_t[::1] pv = piv
    cdef long long[::1] vv = vec
    cdef int count
    if m == 0 or ncols == 0:
        return np.zeros((0, ncols), dtype=np.int64), piv[:ncols]
    with nogil:
        count = _hnf_core(av, bv, pv, vv)
    if count < 0:
        raise OverflowError("int64 overflow in hnf")
    out = np.zeros((max(count, 1), ncols), dtype=np.int64)
    cdef long long[:, ::1] ov = out
    cdef int bad = 0
    if count:
        with nogil:
            bad = _hnf_normalize(bv, pv, ncols, ov)
        if bad:
            raise OverflowError("int64 overflow in hnf")
    return out[:count], piv[:ncols]


def hnf(rows, ncols):
    out, _ = _hnf_array(rows, ncols)
    return out.tolist()


cdef Py_ssize_t _column_kernel(long long[:, ::1] cols, Py_ssize_t m, Py_ssize_t n) nogil:
    """Column reduction of the (m + n) x n matrix stored column-major in ``cols``.

    Returns the rank r (columns r.. span the kernel), or -1 on overflow.
    """
    cdef Py_ssize_t i, j, k, r = 0, best
    cdef long long bestv, q, a
    cdef bint clean
    cdef Py_ssize_t total = m + n
    for i in range(m):
        if r == n:
            break
        while True:
            best = -1
            bestv = 0
            for j in range(r, n):
                if cols[j, i] != 0 and (best < 0 or _abs(cols[j, i]) < bestv):
                    best = j
                    bestv = _abs(cols[j, i])
            if best < 0:
                break
            if best != r:
                for k in range(total):
                    q = cols[r, k]
                    cols[r, k] = cols[best, k]
                    cols[best, k] = q
            a = cols[r, i]
            clean = True
            for j in range(r + 1, n):
                if cols[j, i] != 0:
                    q = glat_floordiv(cols[j, i], a)
                    for k in range(i, total):
                        if cols[r, k] != 0:
                            if glat_submul(cols[j, k], q, cols[r, k], &cols[j, k]):
                                return -1
                    if cols[j, i] != 0:
                        clean = False
            if clean:
                r += 1
                break
    return r


def cocycle_kernel(actions, table, members, Py_ssize_t rank):
    """Kernel of the bar differential C^1 -> C^2 on ``members`` (see _pykernels)."""
    cdef Py_ssize_t k = len(members)
    pos = {x: i for i, x in enumerate(members)}
    act = np.array([actions[x] for x in members], dtype=np.int64).reshape(k, rank, rank)
    prod = np.array([[pos[table[g][h]] for h in members] for g in members],
                    dtype=np.intp).reshape(k, k)
    a = np.zeros((k * k * rank, k * rank), dtype=np.int64)
    cdef long long[:, :, ::1] av = act
    cdef Py_ssize_t[:, ::1] pv = prod
    cdef long long[:, ::1] out = a
    cdef Py_ssize_t g, h, i, j, row
    with nogil:
        for g in range(k):
            for h in range(k):
                for i in range(rank):
                    row = (g * k + h) * rank + i
                    for j in range(rank):
                        out[row, h * rank + j] += av[g, i, j]
                    out[row, pv[g, h] * rank + i] -= 1
                    out[row, g * rank + i] += 1
    return kernel(a, k * rank)


def kernel(rows, Py_ssize_t ncols):
    """Z-basis of the integer kernel (not canonicalized)."""
    cdef Py_ssize_t n = ncols
    if n == 0:
        return []
    e, piv = _hnf_array(rows, ncols)
    cdef Py_ssize_t r = e.shape[0]
    cdef Py_ssize_t i, j, k
    if r == 0:
        return np.eye(n, dtype=np.int64).tolist()
    pivots = [j for j in range(n) if piv[j] >= 0]
    if all(e[i, pivots[i]] == 1 for i in range(r)):
        # Reduced echelon with unit pivots: x_free = e_f, x_pivot = -E[:, f].
        free = [j for j in range(n) if piv[j] < 0]
        out = np.zeros((len(free), n), dtype=np.int64)
        for k, j in enumerate(free):
            out[k, j] = 1
            for i in range(r):
                out[k, pivots[i]] = -e[i, j]
        return out.tolist()
    cols = np.zeros((n, r + n), dtype=np.int64)
    cols[:, :r] = e.T
    cols[:, r:] = np.eye(n, dtype=np.int64)
    cdef long long[:, ::1] cv = cols
    cdef Py_ssize_t rank
    with nogil:
        rank = _column_kernel(cv, r, n)
    if rank < 0:
        raise OverflowError("int64 overflow in kernel")
    return cols[rank:, r:].tolist()


cdef int _snf_core(long long[:, ::1] a, long long[:, ::1] left, long long[:, ::1] right,
                   Py_ssize_t nrows, Py_ssize_t ncols) nogil:
    cdef Py_ssize_t t = 0, i, j, k, bi, bj, bad, lim
    cdef long long best, v, p, q, tmp
    cdef bint found, is_row
    lim = nrows if nrows < ncols else ncols
    while t < lim:
        found = False
        best = 0
        bi = 0
        bj = 0
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = a[i, j]
                if v != 0 and (not found or _abs(v) < best):
                    found = True
                    best = _abs(v)
                    bi = i
                    bj = j
        if not found:
            break
        if bi != t:
            for k in range(ncols):
                tmp = a[t, k]; a[t, k] = a[bi, k]; a[bi, k] = tmp
            for k in range(nrows):
                tmp = left[t, k]; left[t, k] = left[bi, k]; left[bi, k] = tmp
        if bj != t:
            for k in range(nrows):
                tmp = a[k, t]; a[k, t] = a[k, bj]; a[k, bj] = tmp
            for k in range(ncols):
                tmp = right[k, t]; right[k, t] = right[k, bj]; right[k, bj] = tmp
        while True:
            p = a[t, t]
            for i in range(t + 1, nrows):
                if a[i, t] != 0:
                    q = glat_floordiv(a[i, t], p)
                    for k in range(ncols):
                        if a[t, k] != 0:
                            if glat_submul(a[i, k], q, a[t, k], &a[i, k]):
                                return 1
                    for k in range(nrows):
                        if left[t, k] != 0:
                            if glat_submul(left[i, k], q, left[t, k], &left[i, k]):
                                return 1
            for j in range(t + 1, ncols):
                if a[t, j] != 0:
                    q = glat_floordiv(a[t, j], p)
                    for k in range(nrows):
                        if a[k, t] != 0:
                            if glat_submul(a[k, j], q, a[k, t], &a[k, j]):
                                return 1
                    for k in range(ncols):
                        if right[k, t] != 0:
                            if glat_submul(right[k, j], q, right[k, t], &right[k, j]):
                                return 1
            found = False
            best = 0
            for i in range(t + 1, nrows):
                v = a[i, t]
                if v != 0 and (not found or _abs(v) < best):
                    found = True
                    best = _abs(v)
                    bi = i
                    is_row = True
            for j in range(t + 1, ncols):
                v = a[t, j]
                if v != 0 and (not found or _abs(v) < best):
                    found = True
                    best = _abs(v)
                    bj = j
                    is_row = False
            if found:
                if is_row:
                    for k in range(ncols):
                        tmp = a[t, k]; a[t, k] = a[bi, k]; a[bi, k] = tmp
                    for k in range(nrows):
                        tmp = left[t, k]; left[t, k] = left[bi, k]; left[bi, k] = tmp
                else:
                    for k in range(nrows):
                        tmp = a[k, t]; a[k, t] = a[k, bj]; a[k, bj] = tmp
                    for k in range(ncols):
                        tmp = right[k, t]; right[k, t] = right[k, bj]; right[k, bj] = tmp
                continue
            bad = -1
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i, j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            # row_t += row_bad
            for k in range(ncols):
                if a[bad, k] != 0:
                    if glat_add(a[t, k], a[bad, k], &a[t, k]):
                        return 1
            for k in range(nrows):
                if left[bad, k] != 0:
                    if glat_add(left[t, k], left[bad, k], &left[t, k]):
                        return 1
        if a[t, t] < 0:
            for k in range(ncols):
                a[t, k] = -a[t, k]
            for k in range(nrows):
                left[t, k] = -left[t, k]
        t += 1
    return 0


def snf(rows, Py_ssize_t nrows, Py_ssize_t ncols):
    a = _as_array(rows, nrows, ncols)
    left = np.eye(nrows, dtype=np.int64)
    right = np.eye(ncols, dtype=np.int64)
    cdef int bad = 0
    cdef long long[:, ::1] av
    cdef long long[:, ::1] lv
    cdef long long[:, ::1] rv
    if nrows and ncols:
        av = a
        lv = left
        rv = right
        with nogil:
            bad = _snf_core(av, lv, rv, nrows, ncols)
    if bad:
        raise OverflowError("int64 overflow in snf")
    k = min(nrows, ncols)
    diag = [int(a[i, i]) for i in range(k)]
    return left.tolist(), diag, right.tolist()
