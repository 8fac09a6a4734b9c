# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_purepy`` for the reference)."""

from libc.stdlib cimport malloc, calloc, free
from itertools import combinations

ctypedef unsigned long long u64


def least_failing_rectangle(rowmasks, int ncols, int mu, int nu):
    cdef int m = len(rowmasks)
    if ncols > 64:
        raise OverflowError("compiled kernel handles at most 64 columns")
    cdef u64 *rows = <u64 *> malloc(max(m, 1) * sizeof(u64))
    cdef int *idx = <int *> malloc(max(nu, 1) * sizeof(int))
    cdef int *empty = <int *> malloc(max(mu, 1) * sizeof(int))
    cdef int *best = <int *> malloc(max(mu, 1) * sizeof(int))
    cdef int *bestn = <int *> malloc(max(nu, 1) * sizeof(int))
    cdef int i, r, k, found = 0, cmp
    cdef u64 mask
    try:
        for r in range(m):
            rows[r] = <u64> rowmasks[r]
        for i in range(nu):
            idx[i] = i
        while True:
            mask = 0
            for i in range(nu):
                mask |= (<u64> 1) << idx[i]
            k = 0
            for r in range(m):
                if k == mu:
                    break
                if not (rows[r] & mask):
                    empty[k] = r
                    k += 1
            if k >= mu:
                cmp = 0
                if found:
                    for i in range(mu):
                        if empty[i] != best[i]:
                            cmp = -1 if empty[i] < best[i] else 1
                            break
                if not found or cmp < 0:
                    found = 1
                    for i in range(mu):
                        best[i] = empty[i]
                    for i in range(nu):
                        bestn[i] = idx[i]
                    if mu == 0 or best[mu - 1] == mu - 1:
                        break
            # next combination of nu out of ncols
            i = nu - 1
            while i >= 0 and idx[i] == ncols - nu + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for k in range(i + 1, nu):
                idx[k] = idx[k - 1] + 1
        if not found:
            return None
        return tuple(best[i] for i in range(mu)), tuple(bestn[i] for i in range(nu))
    finally:
        free(rows)
        free(idx)
        free(empty)
        free(best)
        free(bestn)


def search_partition(int m, int mu, int nu, int p, long long budget):
    cdef int ncell = m * m
    rects = []
    for rws in combinations(range(m), mu):
        for cls in combinations(range(m), nu):
            rects.append([r * m + c for r in rws for c in cls])
    cdef int nrect = len(rects)
    cdef int size = len(rects[0]) if nrect else 0
    if size < p:
        return 0, None, 0, 1
    per_cell = [[] for _ in range(ncell)]
    for rid, members in enumerate(rects):
        for pos in members:
            per_cell[pos].append(rid)
    cdef int deg = len(per_cell[0])
    cdef int *cr = <int *> malloc(ncell * deg * sizeof(int))
    cdef int *undecided = <int *> malloc(nrect * sizeof(int))
    cdef int *distinct = <int *> calloc(nrect, sizeof(int))
    cdef int *counts = <int *> calloc(nrect * p, sizeof(int))
    cdef int *x = <int *> malloc(ncell * sizeof(int))
    cdef int *used = <int *> calloc(ncell + 1, sizeof(int))
    cdef int *nxt = <int *> calloc(ncell + 1, sizeof(int))
    cdef long long nodes = 0, prunes = 0
    cdef int depth = 0, cell, r, c, v, hi, j, t, k, ok, placed, eq, prev
    try:
        for cell in range(ncell):
            x[cell] = -1
            for j in range(deg):
                cr[cell * deg + j] = per_cell[cell][j]
        for k in range(nrect):
            undecided[k] = size
        while True:
            if depth == ncell:
                return 1, [x[t] for t in range(ncell)], nodes, prunes
            if depth < 0:
                return 0, None, nodes, prunes
            cell = depth
            if x[cell] >= 0:
                prev = x[cell]
                for j in range(deg):
                    k = cr[cell * deg + j]
                    undecided[k] += 1
                    counts[k * p + prev] -= 1
                    if counts[k * p + prev] == 0:
                        distinct[k] -= 1
                x[cell] = -1
            r = cell // m
            c = cell % m
            hi = used[cell]
            if hi > p - 1:
                hi = p - 1
            v = nxt[cell]
            placed = 0
            while v <= hi:
                if r > 0:
                    eq = 1
                    for j in range(c):
                        if x[cell - j - 1] != x[cell - m - j - 1]:
                            eq = 0
                            break
                    if eq and v < x[cell - m]:
                        v += 1
                        prunes += 1
                        continue
                if c > 0:
                    eq = 1
                    for t in range(r):
                        if x[t * m + c - 1] != x[t * m + c]:
                            eq = 0
                            break
                    if eq and v < x[cell - 1]:
                        v += 1
                        prunes += 1
                        continue
                nodes += 1
                if nodes > budget:
                    return -1, None, nodes, prunes
                x[cell] = v
                ok = 1
                for j in range(deg):
                    k = cr[cell * deg + j]
                    undecided[k] -= 1
                    if counts[k * p + v] == 0:
                        distinct[k] += 1
                    counts[k * p + v] += 1
                    if p - distinct[k] > undecided[k]:
                        ok = 0
                if ok:
                    placed = 1
                    break
                for j in range(deg):
                    k = cr[cell * deg + j]
                    undecided[k] += 1
                    counts[k * p + v] -= 1
                    if counts[k * p + v] == 0:
                        distinct[k] -= 1
                x[cell] = -1
                prunes += 1
                v += 1
            if placed:
                nxt[cell] = v + 1
                used[cell + 1] = used[cell] if used[cell] > v + 1 else v + 1
                depth += 1
                if depth < ncell:
                    nxt[depth] = 0
            else:
                depth -= 1
    finally:
        free(cr)
        free(undecided)
        free(distinct)
        free(counts)
        free(x)
        free(used)
        free(nxt)
