# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled versions of the hot kernels; same signatures as ``_kernels_py``."""

from libcpp.vector cimport vector

from ._kernels_py import CosetOverflow


def cyc_mul(a_in, b_in, phi):
    # coefficients can grow past 64 bits, so they stay Python integers
    cdef list a = list(a_in), b = list(b_in)
    cdef Py_ssize_t n = len(a), i, j, k, base
    cdef list out = [0] * (2 * n - 1)
    cdef list ph = list(phi)
    cdef object ai, c
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                if b[j]:
                    out[i + j] += ai * b[j]
    for k in range(2 * n - 2, n - 1, -1):
        c = out[k]
        if c:
            base = k - n
            for j in range(n):
                if ph[j]:
                    out[base + j] -= c * ph[j]
    return out[:n]


cdef struct Enum:
    int ncols
    int cap
    long max_defs
    int live


cdef inline int _rep(vector[int]& parent, int k) nogil:
    cdef int r = k, nxt
    while parent[r] != r:
        r = parent[r]
    while parent[k] != r:
        nxt = parent[k]
        parent[k] = r
        k = nxt
    return r


cdef inline void _merge(vector[int]& parent, vector[int]& queue, Enum* st, int k, int l) nogil:
    cdef int a = _rep(parent, k), b = _rep(parent, l), lo, hi
    if a != b:
        if a < b:
            lo, hi = a, b
        else:
            lo, hi = b, a
        parent[hi] = lo
        queue.push_back(hi)
        st.live -= 1


cdef void _coincidence(vector[int]& table, vector[int]& parent, Enum* st, int a, int b) nogil:
    cdef vector[int] queue
    cdef size_t qi = 0
    cdef int g, x, d, xi, mu, nu, nc = st.ncols
    _merge(parent, queue, st, a, b)
    while qi < queue.size():
        g = queue[qi]
        qi += 1
        for x in range(nc):
            d = table[g * nc + x]
            if d != -1:
                xi = x ^ 1
                table[d * nc + xi] = -1
                mu = _rep(parent, g)
                nu = _rep(parent, d)
                if table[mu * nc + x] != -1:
                    _merge(parent, queue, st, nu, table[mu * nc + x])
                elif table[nu * nc + xi] != -1:
                    _merge(parent, queue, st, mu, table[nu * nc + xi])
                else:
                    table[mu * nc + x] = nu
                    table[nu * nc + xi] = mu


cdef int _define(vector[int]& table, vector[int]& parent, Enum* st, int c, int x) nogil:
    cdef int n = <int>parent.size(), y
    if n >= st.max_defs or st.live >= st.cap:
        return -1
    for y in range(st.ncols):
        table.push_back(-1)
    parent.push_back(n)
    st.live += 1
    table[c * st.ncols + x] = n
    table[n * st.ncols + (x ^ 1)] = c
    return 0


cdef int _scan_and_fill(vector[int]& table, vector[int]& parent, Enum* st, int c,
                        const int* w, int length) nogil:
    cdef int f = c, b = c, i = 0, j = length - 1, nc = st.ncols
    while True:
        while i <= j and table[f * nc + w[i]] != -1:
            f = table[f * nc + w[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, parent, st, f, b)
            return 0
        while j >= i and table[b * nc + (w[j] ^ 1)] != -1:
            b = table[b * nc + (w[j] ^ 1)]
            j -= 1
        if j < i:
            _coincidence(table, parent, st, f, b)
            return 0
        if i == j:
            table[f * nc + w[i]] = b
            table[b * nc + (w[i] ^ 1)] = f
            return 0
        if _define(table, parent, st, f, w[i]) < 0:
            return -1


def coset_enumerate(int ngens, relators, int cap):
    cdef Enum st
    st.ncols = 2 * ngens
    st.cap = cap
    st.max_defs = 64 * <long>cap
    st.live = 1
    cdef vector[int] table, parent, flat, starts, lengths
    cdef int c = 0, x, r, nc = st.ncols, failed = 0
    cdef size_t nrel
    for x in range(nc):
        table.push_back(-1)
    parent.push_back(0)
    for w in relators:
        starts.push_back(<int>flat.size())
        lengths.push_back(len(w))
        for x in w:
            flat.push_back(x)
    nrel = starts.size()
    with nogil:
        while c < <int>parent.size():
            if parent[c] == c:
                for r in range(<int>nrel):
                    if _scan_and_fill(table, parent, &st, c, flat.data() + starts[r], lengths[r]) < 0:
                        failed = 1
                        break
                    if parent[c] != c:
                        break
                if failed:
                    break
                if parent[c] == c:
                    for x in range(nc):
                        if table[c * nc + x] == -1:
                            if _define(table, parent, &st, c, x) < 0:
                                failed = 1
                                break
                if failed:
                    break
            c += 1
    if failed:
        raise CosetOverflow("presentation may be infinite or cap too small")
    alive = [k for k in range(<int>parent.size()) if parent[k] == k]
    index = {k: i for i, k in enumerate(alive)}
    return [[index[_rep(parent, table[k * nc + x])] for x in range(nc)] for k in alive]


def extend_hom(src_right, dst_mul, images, int n_src, int n_dst):
    # the Cayley tables are indexed in place: copying them would cost more than the walk
    cdef list mul = dst_mul if type(dst_mul) is list else list(dst_mul)
    cdef list rows = [r if type(r) is list else list(r) for r in src_right]
    cdef int ngens = len(images), k, u, v, w, base
    cdef vector[int] img, phi, queue
    cdef size_t qi = 0
    cdef list row
    for v in images:
        img.push_back(v)
    phi.assign(n_src, -1)
    phi[0] = 0
    queue.push_back(0)
    while qi < queue.size():
        u = queue[qi]
        qi += 1
        base = phi[u] * n_dst
        for k in range(ngens):
            row = rows[k]
            v = row[u]
            w = mul[base + img[k]]
            if phi[v] == -1:
                phi[v] = w
                queue.push_back(v)
            elif phi[v] != w:
                return None
    if <int>queue.size() != n_src:
        return None
    return [phi[u] for u in range(n_src)]


def element_orders(mul_in, int n):
    cdef list mul = mul_in if type(mul_in) is list else list(mul_in)
    cdef list orders = [0] * n
    cdef int g, k, x
    for g in range(n):
        k = 1
        x = g
        while x != 0:
            x = mul[x * n + g]
            k += 1
        orders[g] = k
    return orders
