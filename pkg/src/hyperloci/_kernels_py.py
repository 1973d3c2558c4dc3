"""Pure-Python reference versions of the hot kernels.

The compiled module ``_kernels`` exposes the same functions with the same
semantics; ``kernels`` picks one at import time.
"""
from __future__ import annotations


class CosetOverflow(RuntimeError):
    pass


def cyc_mul(a, b, phi):
    """Product of two integer vectors modulo the monic integer polynomial ``phi``."""
    n = len(a)
    out = [0] * (2 * n - 1)
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    for k in range(2 * n - 2, n - 1, -1):
        c = out[k]
        if c:
            base = k - n
            for j in range(n):
                pj = phi[j]
                if pj:
                    out[base + j] -= c * pj
    return out[:n]


def coset_enumerate(ngens, relators, cap):
    """HLT coset enumeration of the trivial subgroup.

    ``relators`` are lists of column indices (2*k for generator k, 2*k+1
    for its inverse).  Returns the coset table as a list of rows, coset 0
    being the identity coset.
    """
    ncols = 2 * ngens
    max_defs = 64 * cap
    table = [[-1] * ncols]
    parent = [0]
    live = 1

    def rep(k):
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def merge(k, l, queue):
        nonlocal live
        a, b = rep(k), rep(l)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            parent[hi] = lo
            queue.append(hi)
            live -= 1

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d != -1:
                    xi = x ^ 1
                    table[d][xi] = -1
                    mu, nu = rep(g), rep(d)
                    if table[mu][x] != -1:
                        merge(nu, table[mu][x], queue)
                    elif table[nu][xi] != -1:
                        merge(mu, table[nu][xi], queue)
                    else:
                        table[mu][x] = nu
                        table[nu][xi] = mu

    def define(c, x):
        nonlocal live
        n = len(table)
        if n >= max_defs or live >= cap:
            raise CosetOverflow("presentation may be infinite or cap too small")
        table.append([-1] * ncols)
        parent.append(n)
        live += 1
        table[c][x] = n
        table[n][x ^ 1] = c

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] != -1:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] != -1:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in relators:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] == -1:
                        define(c, x)
        c += 1

    alive = [k for k in range(len(table)) if parent[k] == k]
    index = {k: i for i, k in enumerate(alive)}
    return [[index[rep(table[k][x])] for x in range(ncols)] for k in alive]


def extend_hom(src_right, dst_mul, images, n_src, n_dst):
    """Extend generator images along the Cayley graph of the source.

    ``src_right[k][u]`` is u*g_k in the source, ``dst_mul[a*n_dst+b]`` the
    target product.  Returns the element map, or None when the assignment
    violates a relation.
    """
    phi = [-1] * n_src
    phi[0] = 0
    queue = [0]
    ngens = len(images)
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        base = phi[u] * n_dst
        for k in range(ngens):
            v = src_right[k][u]
            w = dst_mul[base + images[k]]
            pv = phi[v]
            if pv == -1:
                phi[v] = w
                queue.append(v)
            elif pv != w:
                return None
    if len(queue) != n_src:
        return None
    return phi


def element_orders(mul, n):
    """Order of every element given a flattened Cayley table (identity 0)."""
    orders = [0] * n
    for g in range(n):
        k, x = 1, g
        while x != 0:
            x = mul[x * n + g]
            k += 1
        orders[g] = k
    return orders
