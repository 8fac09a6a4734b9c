"""Finite Ramsey extraction and 3-class anti-thickness witnesses.

Colorings are callables, never materialized, so sizes like 3**9 stay cheap:
the pivot chain touches about ``m * c / (c - 1)`` pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

MASK64 = (1 << 64) - 1


class DegenerateWitness(Exception):
    pass


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def hashed_value(seed: int, i: int, j: int, colors: int) -> int:
    """Deterministic pseudo-random color of the ordered pair ``(i, j)``."""
    return _splitmix64(_splitmix64(_splitmix64(seed & MASK64) ^ i) ^ j) % colors


@dataclass(frozen=True)
class PairColoring:
    """A coloring of unordered pairs of ``0..size-1``; ``value(i, j)`` must be symmetric."""

    size: int
    colors: int
    value: Callable[[int, int], int]

    def __call__(self, i: int, j: int) -> int:
        return self.value(min(i, j), max(i, j))


@dataclass(frozen=True)
class GridOracle:
    """A total coloring of the full square ``[m] x [m]``, diagonal included."""

    size: int
    colors: int
    value: Callable[[int, int], int]

    def __call__(self, i: int, j: int) -> int:
        return self.value(i, j)


@dataclass(frozen=True)
class WitnessPair:
    K: tuple
    L: tuple
    color_set: frozenset

    def to_dict(self) -> dict:
        return {"K": list(self.K), "L": list(self.L), "colorSet": sorted(self.color_set)}


def ceil_log(m: int, c: int) -> int:
    """Smallest e with ``c**e >= m``."""
    e, p = 0, 1
    while p < m:
        p *= c
        e += 1
    return e


def size_guarantee(m: int, c: int) -> int:
    return -(-ceil_log(m, c) // c)


def is_monochromatic(f, A: Sequence[int], k: int) -> bool:
    A = list(A)
    return all(f(A[a], A[b]) == k for a in range(len(A)) for b in range(a + 1, len(A)))


def ramsey_extract(f: PairColoring, ground: Sequence[int] | None = None) -> tuple[tuple, int]:
    """A monochromatic set and its color, via the pivot chain.

    Take the least element of the pool as pivot, keep the largest color class
    of the rest toward it (lowest color on ties), repeat.  Pivots recorded
    with the same color form a monochromatic set; the final pivot joins any
    of them.  At least ``ceil(ceil(log_c m) / c)`` elements come back.
    """
    pool = sorted(range(f.size) if ground is None else ground)
    m, c = len(pool), f.colors
    if m < 2:
        raise ValueError("need at least two points")
    pivots = []  # (pivot, color toward all later pool members)
    while pool:
        v = pool[0]
        if len(pool) == 1:
            last = v
            break
        groups = [[] for _ in range(c)]
        for u in pool[1:]:
            groups[f(v, u)].append(u)
        k = max(range(c), key=lambda col: (len(groups[col]), -col))
        pivots.append((v, k))
        pool = groups[k]
    tally = [0] * c
    for _, k in pivots:
        tally[k] += 1
    k = max(range(c), key=lambda col: (tally[col], -col))
    A = tuple(sorted([v for v, col in pivots if col == k] + [last]))
    if not is_monochromatic(f, A, k):
        raise AssertionError("pivot chain produced a non-monochromatic set")
    if len(A) < size_guarantee(m, c):
        raise AssertionError(f"extracted {len(A)} < guaranteed {size_guarantee(m, c)}")
    return A, k


def anti_thick_witness(h: GridOracle) -> WitnessPair:
    """Disjoint K, L with ``h[K x L]`` of at most two colors.

    Reads h below the diagonal as ``f{a<b} = h(a, b)`` and above it as
    ``g{a<b} = h(b, a)``; extracts a set A monochromatic for f, then B inside
    A monochromatic for g, and deals B alternately into K and L.
    """
    if h.colors != 3:
        raise ValueError("the witness is for 3-colorings")
    if h.size < 4:
        raise ValueError("need m >= 4")
    f = PairColoring(h.size, 3, lambda a, b: h(a, b))
    g = PairColoring(h.size, 3, lambda a, b: h(b, a))
    A, _ = ramsey_extract(f)
    if len(A) < 2:
        raise DegenerateWitness(f"first extraction returned {len(A)} points")
    B, _ = ramsey_extract(g, A)
    if len(B) < 2:
        raise DegenerateWitness(f"second extraction returned {len(B)} points")
    K, L = tuple(B[0::2]), tuple(B[1::2])
    colors = frozenset(h(a, b) for a in K for b in L)
    if len(colors) > 2 or set(K) & set(L):
        raise AssertionError("witness pair failed its own check")
    return WitnessPair(K, L, colors)


def _order3(i: int, j: int) -> int:
    return 0 if i < j else (1 if i > j else 2)


def grid_oracle(name: str, m: int, colors: int = 3) -> GridOracle:
    """Build a named oracle: ``constant:<k>``, ``order3``, ``random:<seed>`` or ``file:<path>``."""
    kind, _, arg = name.partition(":")
    if kind == "constant":
        k = int(arg or 0)
        return GridOracle(m, colors, lambda i, j: k)
    if kind == "order3":
        return GridOracle(m, 3, _order3)
    if kind == "random":
        seed = int(arg or 0)
        return GridOracle(m, colors, lambda i, j: hashed_value(seed, i, j, colors))
    if kind == "file":
        with open(arg) as fh:
            matrix = json.load(fh)
        if len(matrix) < m or any(len(row) < m for row in matrix[:m]):
            raise ValueError(f"matrix in {arg} is smaller than {m}x{m}")
        return GridOracle(m, colors, lambda i, j: matrix[i][j])
    raise ValueError(f"unknown oracle {name!r}")


def pair_coloring(name: str, m: int, colors: int = 2) -> PairColoring:
    """Pair colorings from the same registry, read on ``(min, max)``."""
    h = grid_oracle(name, m, colors)
    return PairColoring(m, h.colors, lambda a, b: h(a, b))
