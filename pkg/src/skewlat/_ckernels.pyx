# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: skew-lattice table search and canonical-key minimisation.

Mirrors ``_pykernels`` exactly; the search runs without the GIL so worker
threads in ``skewlat.enumerate`` proceed in parallel.
"""

from libc.stdlib cimport malloc, realloc, free

cdef enum:
    MAXN = 8
    RIGHT_HANDED = 1
    LEFT_HANDED = 2


cdef struct State:
    int n
    int flags
    int ncells
    int cells_i[MAXN * MAXN]
    int cells_j[MAXN * MAXN]
    int M[MAXN * MAXN]
    int J[MAXN * MAXN]
    signed char *out
    Py_ssize_t out_len
    Py_ssize_t out_cap
    int failed


cdef inline bint assoc_ok(int *T, int n, int a, int b) nogil:
    cdef int v = T[a * n + b]
    cdef int x, y, z, u, w, lhs, rhs
    for z in range(n):
        lhs = T[v * n + z]
        w = T[b * n + z]
        if lhs >= 0 and w >= 0:
            rhs = T[a * n + w]
            if rhs >= 0 and lhs != rhs:
                return False
    for x in range(n):
        u = T[x * n + a]
        rhs = T[x * n + v]
        if u >= 0 and rhs >= 0:
            lhs = T[u * n + b]
            if lhs >= 0 and lhs != rhs:
                return False
    for x in range(n):
        for y in range(n):
            if T[x * n + y] == a:
                w = T[y * n + b]
                if w >= 0:
                    rhs = T[x * n + w]
                    if rhs >= 0 and rhs != v:
                        return False
            if T[x * n + y] == b:
                u = T[a * n + x]
                if u >= 0:
                    lhs = T[u * n + y]
                    if lhs >= 0 and lhs != v:
                        return False
    return True


cdef inline bint absorb_left_ok(int *P, int *Q, int n, int a, int b) nogil:
    cdef int v = P[a * n + b]
    cdef int q = Q[v * n + b]
    cdef int y
    if q >= 0 and q != b:
        return False
    q = Q[a * n + b]
    if q >= 0 and q != b:
        for y in range(n):
            if P[y * n + b] == a:
                return False
    return True


cdef inline bint absorb_right_ok(int *P, int *Q, int n, int a, int b) nogil:
    cdef int v = P[a * n + b]
    cdef int q = Q[a * n + v]
    cdef int y
    if q >= 0 and q != a:
        return False
    q = Q[a * n + b]
    if q >= 0 and q != a:
        for y in range(n):
            if P[a * n + y] == b:
                return False
    return True


cdef inline bint handed_ok(int *M, int n, int a, int b, int flags) nogil:
    cdef int v, lhs, rhs, cur, y
    if flags & RIGHT_HANDED:
        v = M[a * n + b]
        lhs = M[v * n + a]
        rhs = M[b * n + a]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
        v = M[b * n + a]
        if v >= 0:
            lhs = M[v * n + b]
            if lhs >= 0 and lhs != M[a * n + b]:
                return False
        cur = M[a * n + b]
        for y in range(n):
            if M[b * n + y] == a:
                rhs = M[y * n + b]
                if rhs >= 0 and rhs != cur:
                    return False
    if flags & LEFT_HANDED:
        v = M[a * n + b]
        lhs = M[v * n + a]
        if lhs >= 0 and lhs != v:
            return False
        cur = M[a * n + b]
        for y in range(n):
            if M[b * n + y] == a and cur != a:
                return False
    return True


cdef inline bint cell_ok(State *s, int a, int b) nogil:
    cdef int n = s.n
    if not assoc_ok(s.M, n, a, b):
        return False
    if not assoc_ok(s.J, n, a, b):
        return False
    if not absorb_left_ok(s.M, s.J, n, a, b):
        return False
    if not absorb_left_ok(s.J, s.M, n, a, b):
        return False
    if not absorb_right_ok(s.M, s.J, n, a, b):
        return False
    if not absorb_right_ok(s.J, s.M, n, a, b):
        return False
    if s.flags and not handed_ok(s.M, n, a, b, s.flags):
        return False
    return True


cdef void emit(State *s) nogil:
    cdef int nn = s.n * s.n
    cdef Py_ssize_t need = s.out_len + 2 * nn
    cdef Py_ssize_t cap
    cdef signed char *buf
    cdef int k
    if s.failed:
        return
    if need > s.out_cap:
        cap = s.out_cap * 2
        if cap < need:
            cap = need
        buf = <signed char *> realloc(s.out, cap)
        if buf == NULL:
            s.failed = 1
            return
        s.out = buf
        s.out_cap = cap
    for k in range(nn):
        s.out[s.out_len + k] = <signed char> s.M[k]
        s.out[s.out_len + nn + k] = <signed char> s.J[k]
    s.out_len = need


cdef inline int n_choices(int n) nogil:
    return 2 + (n - 2) * (n - 2)


cdef inline void choice(int n, int i, int j, int idx, int *m, int *jv) nogil:
    # order matches _pykernels.cell_choices
    cdef int p, q, cnt, v
    if idx == 0:
        m[0] = j
        jv[0] = i
        return
    if idx == 1:
        m[0] = i
        jv[0] = j
        return
    idx -= 2
    p = idx // (n - 2)
    q = idx % (n - 2)
    # p-th and q-th elements of range(n) minus {i, j}
    cnt = -1
    for v in range(n):
        if v != i and v != j:
            cnt += 1
            if cnt == p:
                m[0] = v
                break
    cnt = -1
    for v in range(n):
        if v != i and v != j:
            cnt += 1
            if cnt == q:
                jv[0] = v
                break


cdef void rec(State *s, int k, int first) nogil:
    cdef int i, j, c, idx, lo, hi, m, jv
    if s.failed:
        return
    if k == s.ncells:
        emit(s)
        return
    i = s.cells_i[k]
    j = s.cells_j[k]
    c = i * s.n + j
    lo = 0
    hi = n_choices(s.n)
    if k == 0 and first >= 0:
        lo = first
        hi = first + 1
    for idx in range(lo, hi):
        choice(s.n, i, j, idx, &m, &jv)
        s.M[c] = m
        s.J[c] = jv
        if cell_ok(s, i, j):
            rec(s, k + 1, first)
    s.M[c] = -1
    s.J[c] = -1


def search(int n, int flags=0, int first=-1):
    """All labelled skew lattices on n elements as flat (meet, join) tuples."""
    if n < 1 or n > MAXN:
        raise ValueError(f"order must be in 1..{MAXN}")
    cdef State *s = <State *> malloc(sizeof(State))
    if s == NULL:
        raise MemoryError()
    cdef int x, i, j, k, nn = n * n
    s.n = n
    s.flags = flags
    s.ncells = 0
    s.out = NULL
    s.out_len = 0
    s.out_cap = 0
    s.failed = 0
    for k in range(nn):
        s.M[k] = -1
        s.J[k] = -1
    for x in range(n):
        s.M[x * n + x] = x
        s.J[x * n + x] = x
    for i in range(n):
        for j in range(n):
            if i != j:
                s.cells_i[s.ncells] = i
                s.cells_j[s.ncells] = j
                s.ncells += 1
    try:
        if s.ncells == 0:
            if first <= 0:
                emit(s)
        else:
            with nogil:
                rec(s, 0, first)
        if s.failed:
            raise MemoryError()
        out = []
        for k in range(0, s.out_len, 2 * nn):
            out.append((
                tuple([<int> s.out[k + t] for t in range(nn)]),
                tuple([<int> s.out[k + nn + t] for t in range(nn)]),
            ))
        return out
    finally:
        free(s.out)
        free(s)


def n_first_choices(int n):
    return n_choices(n) if n > 1 else 1


def canonical_key(meet, join, int n, perms):
    """Lexicographically least relabelled (meet, join) over ``perms``."""
    cdef int nn = n * n
    cdef int t[2 * MAXN * MAXN]
    cdef int best[2 * MAXN * MAXN]
    cdef int cand
    cdef int p[MAXN]
    cdef int inv[MAXN]
    cdef int idx, r, a, b, x, have = 0, smaller, val, done
    if n < 1 or n > MAXN:
        raise ValueError(f"order must be in 1..{MAXN}")
    for idx in range(nn):
        t[idx] = meet[idx]
        t[nn + idx] = join[idx]
    best_perm = None
    for perm in perms:
        for x in range(n):
            p[x] = perm[x]
            inv[p[x]] = x
        smaller = not have
        done = 0
        for idx in range(2 * nn):
            r = idx % nn
            a = r // n
            b = r % n
            if idx < nn:
                val = p[t[inv[a] * n + inv[b]]]
            else:
                val = p[t[nn + inv[a] * n + inv[b]]]
            if not smaller:
                if val > best[idx]:
                    done = 1
                    break
                if val < best[idx]:
                    smaller = 1
            cand = val
            if smaller:
                best[idx] = cand
        if not done and smaller:
            have = 1
            best_perm = tuple(perm)
    if not have:
        raise ValueError("no permutations given")
    return bytes([best[idx] for idx in range(2 * nn)]), best_perm
