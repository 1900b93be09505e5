# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same API and outputs as ``mulnet._pykernels``.

Masks are held in 64-bit words, so graphs are limited to 64 vertices;
larger inputs are delegated to the pure-Python implementation.
"""

from itertools import permutations

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from mulnet import _pykernels

BACKEND = "cython"

ctypedef unsigned long long u64

cdef enum:
    MAXN = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef int cmp_rows(int* a, int* b, int width) nogil:
    cdef int i
    for i in range(width):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


cdef int rank_rows(int* rows, int n, int width, int* out, int* order) nogil:
    """Dense ranks of the n rows (lexicographic); returns the number of classes."""
    cdef int i, j, t, classes
    for i in range(n):
        order[i] = i
    # insertion sort, n is small
    for i in range(1, n):
        t = order[i]
        j = i - 1
        while j >= 0 and cmp_rows(&rows[order[j] * width], &rows[t * width], width) > 0:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = t
    classes = 0
    for i in range(n):
        if i > 0 and cmp_rows(&rows[order[i - 1] * width], &rows[order[i] * width], width) != 0:
            classes += 1
        out[order[i]] = classes
    return classes + 1 if n > 0 else 0


def refine(int n, children, colors):
    if n > MAXN:
        return _pykernels.refine(n, children, colors)
    cdef u64 ch[MAXN]
    cdef u64 par[MAXN]
    cdef int rank[MAXN]
    cdef int newrank[MAXN]
    cdef int order[MAXN]
    _refine_into(n, children, colors, ch, par, rank, newrank, order)
    return [rank[v] for v in range(n)]


cdef int _refine_into(int n, children, colors, u64* ch, u64* par,
                      int* rank, int* newrank, int* order) except -1:
    cdef int v, w, r, classes, new_classes, width
    cdef u64 m
    cdef int* rows
    for v in range(n):
        ch[v] = <u64>children[v]
        par[v] = 0
    for v in range(n):
        m = ch[v]
        while m:
            w = __builtin_ctzll(m)
            par[w] |= (<u64>1) << v
            m &= m - 1
    rows = <int*>malloc(n * 3 * sizeof(int) + 1)
    for v in range(n):
        rows[3 * v] = <int>colors[v]
        rows[3 * v + 1] = popcount(par[v])
        rows[3 * v + 2] = popcount(ch[v])
    classes = rank_rows(rows, n, 3, rank, order)
    free(rows)
    while True:
        width = 1 + 2 * classes
        rows = <int*>malloc(n * width * sizeof(int) + 1)
        memset(rows, 0, n * width * sizeof(int))
        for v in range(n):
            rows[v * width] = rank[v]
            m = ch[v]
            while m:
                w = __builtin_ctzll(m)
                rows[v * width + 1 + rank[w]] += 1
                m &= m - 1
            m = par[v]
            while m:
                w = __builtin_ctzll(m)
                rows[v * width + 1 + classes + rank[w]] += 1
                m &= m - 1
        new_classes = rank_rows(rows, n, width, newrank, order)
        free(rows)
        if new_classes == classes:
            return classes
        for v in range(n):
            rank[v] = newrank[v]
        classes = new_classes


def canonical_form(int n, children, colors):
    if n > MAXN:
        return _pykernels.canonical_form(n, children, colors)
    if n == 0:
        return (), ()
    cdef u64 ch[MAXN]
    cdef u64 par[MAXN]
    cdef int rank[MAXN]
    cdef int newrank[MAXN]
    cdef int order[MAXN]
    cdef int pos[MAXN]
    cdef u64 masks[MAXN]
    cdef u64 best[MAXN]
    cdef int classes, v, w, c, i, k, off, have_best, better
    cdef u64 m, mm

    classes = _refine_into(n, children, colors, ch, par, rank, newrank, order)

    cells = [[] for _ in range(classes)]
    for v in range(n):
        cells[rank[v]].append(v)
    vorder = [v for cell in cells for v in cell]
    ordered_colors = tuple(colors[v] for v in vorder)

    # per cell: flat table of all permutations of its members
    cdef int ncells = classes
    cdef int* cell_size = <int*>malloc(ncells * sizeof(int))
    cdef int* cell_off = <int*>malloc(ncells * sizeof(int))
    cdef int* perm_count = <int*>malloc(ncells * sizeof(int))
    cdef int** perm_table = <int**>malloc(ncells * sizeof(int*))
    cdef int* odo = <int*>malloc(ncells * sizeof(int))
    off = 0
    for c in range(ncells):
        members = cells[c]
        k = len(members)
        cell_size[c] = k
        cell_off[c] = off
        off += k
        perms = list(permutations(members))
        perm_count[c] = len(perms)
        perm_table[c] = <int*>malloc(len(perms) * k * sizeof(int))
        for i, p in enumerate(perms):
            for w in range(k):
                perm_table[c][i * k + w] = p[w]
        odo[c] = 0

    have_best = 0
    try:
        while True:
            for c in range(ncells):
                k = cell_size[c]
                for w in range(k):
                    pos[perm_table[c][odo[c] * k + w]] = cell_off[c] + w
            for v in range(n):
                m = ch[v]
                mm = 0
                while m:
                    w = __builtin_ctzll(m)
                    mm |= (<u64>1) << pos[w]
                    m &= m - 1
                masks[pos[v]] = mm
            if not have_best:
                better = 1
            else:
                better = 0
                for i in range(n):
                    if masks[i] != best[i]:
                        better = 1 if masks[i] < best[i] else 0
                        break
            if better:
                for i in range(n):
                    best[i] = masks[i]
                have_best = 1
            # advance odometer, last cell fastest
            c = ncells - 1
            while c >= 0:
                odo[c] += 1
                if odo[c] < perm_count[c]:
                    break
                odo[c] = 0
                c -= 1
            if c < 0:
                break
    finally:
        for c in range(ncells):
            free(perm_table[c])
        free(perm_table)
        free(perm_count)
        free(cell_size)
        free(cell_off)
        free(odo)

    return ordered_colors, tuple(best[i] for i in range(n))


def rooted_dags(int n, int max_leaves=0, bint leaf_indegree_one=False, bint trees_only=False):
    if n < 1:
        return
    if n > MAXN:
        yield from _pykernels.rooted_dags(n, max_leaves, leaf_indegree_one, trees_only)
        return
    cdef u64 ch[MAXN]
    cdef u64 pm[MAXN]
    cdef int v, j, leaves, ok
    cdef u64 m, bit
    for v in range(n):
        ch[v] = 0
        pm[v] = 0
    if n == 1:
        if not leaf_indegree_one:
            yield (0,)
        return
    # odometer over parent masks of vertices 1..n-1; pm[j] == 0 means "not started"
    j = 1
    while j >= 1:
        bit = (<u64>1) << j
        # retract current choice for vertex j
        m = pm[j]
        while m:
            v = __builtin_ctzll(m)
            ch[v] &= ~bit
            m &= m - 1
        # next choice
        if trees_only:
            if pm[j] == 0:
                pm[j] = 1
            else:
                pm[j] <<= 1
            if pm[j] >= bit:
                pm[j] = 0
                j -= 1
                continue
        else:
            pm[j] += 1
            if pm[j] >= bit:
                pm[j] = 0
                j -= 1
                continue
        m = pm[j]
        while m:
            v = __builtin_ctzll(m)
            ch[v] |= bit
            m &= m - 1
        if j < n - 1:
            j += 1
            continue
        leaves = 0
        ok = 1
        for v in range(n):
            if ch[v] == 0:
                leaves += 1
                if leaf_indegree_one and popcount(pm[v]) != 1:
                    ok = 0
                    break
        if ok and (max_leaves == 0 or leaves <= max_leaves):
            yield tuple([ch[v] for v in range(n)])
