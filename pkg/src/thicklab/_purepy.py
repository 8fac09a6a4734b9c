"""Pure-Python versions of the hot kernels.

These mirror ``_speedups.pyx`` one for one and are used whenever the compiled
module is missing (or ``THICKLAB_PURE=1`` is set).
"""

from itertools import combinations


def least_failing_rectangle(rowmasks, ncols, mu, nu):
    """Lexicographically least (M, N) with M x N disjoint from the cell set.

    ``rowmasks[r]`` is the bitmask of columns occupied in row ``r``.  Ordering
    compares M first, then N, both as ascending tuples.  Requires
    ``mu <= len(rowmasks)`` and ``nu <= ncols``.  Returns None when every
    mu x nu rectangle is hit.
    """
    m = len(rowmasks)
    best_m = None
    best_n = None
    for cols in combinations(range(ncols), nu):
        mask = 0
        for c in cols:
            mask |= 1 << c
        empty = []
        for r in range(m):
            if not rowmasks[r] & mask:
                empty.append(r)
                if len(empty) == mu:
                    break
        if len(empty) < mu:
            continue
        cand = tuple(empty)
        # N runs in lex order, so only a strictly smaller M can improve.
        if best_m is None or cand < best_m:
            best_m, best_n = cand, cols
            if cand == tuple(range(mu)):
                break
    if best_m is None:
        return None
    return best_m, best_n


def rectangles(m, mu, nu):
    """Cell lists (row-major ids) of all mu x nu rectangles of an m x m grid."""
    out = []
    for rows in combinations(range(m), mu):
        for cols in combinations(range(m), nu):
            out.append([r * m + c for r in rows for c in cols])
    return out


def search_partition(m, mu, nu, p, budget):
    """Complete backtracking search for a p-class (mu, nu)-thick partition.

    Cells are assigned in row-major order with values in ascending order.
    Symmetry is broken by value precedence and by requiring rows and columns
    to be lexicographically nondecreasing; all three are lex-leader
    constraints for the same variable order, so together they stay sound.

    Returns ``(status, cells, nodes, prunes)`` where status is 1 (SAT),
    0 (UNSAT) or -1 (budget exceeded) and ``cells`` is the row-major class
    list for SAT, else None.
    """
    ncell = m * m
    rects = rectangles(m, mu, nu)
    nrect = len(rects)
    size = len(rects[0]) if rects else 0
    if size < p:
        # A rectangle cannot host p distinct classes.
        return 0, None, 0, 1
    cell_rects = [[] for _ in range(ncell)]
    for k, cells in enumerate(rects):
        for cell in cells:
            cell_rects[cell].append(k)
    undecided = [size] * nrect
    distinct = [0] * nrect
    counts = [[0] * p for _ in range(nrect)]
    x = [-1] * ncell
    used = [0] * (ncell + 1)  # used[k]: classes in use among cells < k
    nodes = 0
    prunes = 0

    def place(cell, v):
        ok = True
        for k in cell_rects[cell]:
            undecided[k] -= 1
            row = counts[k]
            if row[v] == 0:
                distinct[k] += 1
            row[v] += 1
            if p - distinct[k] > undecided[k]:
                ok = False
        return ok

    def unplace(cell, v):
        for k in cell_rects[cell]:
            undecided[k] += 1
            row = counts[k]
            row[v] -= 1
            if row[v] == 0:
                distinct[k] -= 1

    # Iterative DFS; value[cell] is the next value to try at that depth.
    nxt = [0] * (ncell + 1)
    depth = 0
    nxt[0] = 0
    while True:
        if depth == ncell:
            return 1, list(x), nodes, prunes
        if depth < 0:
            return 0, None, nodes, prunes
        cell = depth
        if x[cell] >= 0:
            unplace(cell, x[cell])
            x[cell] = -1
        r, c = divmod(cell, m)
        hi = min(p - 1, used[cell])
        v = nxt[cell]
        placed = False
        while v <= hi:
            # row lex: row r >= row r-1
            if r > 0:
                eq = True
                for j in range(c):
                    if x[cell - j - 1] != x[cell - m - j - 1]:
                        eq = False
                        break
                if eq and v < x[cell - m]:
                    v += 1
                    prunes += 1
                    continue
            # column lex: column c >= column c-1
            if c > 0:
                eq = True
                for i in range(r):
                    if x[i * m + c - 1] != x[i * m + c]:
                        eq = False
                        break
                if eq and v < x[cell - 1]:
                    v += 1
                    prunes += 1
                    continue
            nodes += 1
            if nodes > budget:
                return -1, None, nodes, prunes
            x[cell] = v
            if place(cell, v):
                placed = True
                break
            unplace(cell, v)
            x[cell] = -1
            prunes += 1
            v += 1
        if placed:
            nxt[cell] = v + 1
            used[cell + 1] = max(used[cell], v + 1)
            depth += 1
            if depth < ncell:
                nxt[depth] = 0
        else:
            depth -= 1
