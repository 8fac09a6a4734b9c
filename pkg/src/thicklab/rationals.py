"""Fixed enumerations of Q, Q^2 and Q^n.

The line is enumerated as ``q(0) = 0, q(2k-1) = cw(k), q(2k) = -cw(k)`` where
``cw`` is the Calkin-Wilf sequence.  Tuples of line indices are listed shell by
shell (total index sum), lexicographically inside a shell; for pairs this is
the Cantor pairing ``pair(x, y) = (x+y)(x+y+1)/2 + x``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt


def calkin_wilf(k: int) -> Fraction:
    """The k-th term (k >= 1): follow the binary digits of k below the root 1/1."""
    if k < 1:
        raise ValueError("Calkin-Wilf terms are indexed from 1")
    a, b = 1, 1
    for bit in bin(k)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_index(x: Fraction) -> int:
    """Position of a positive rational in the Calkin-Wilf sequence."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("only positive rationals occur")
    a, b = x.numerator, x.denominator
    bits = []  # collected from the leaf upward, in runs
    while (a, b) != (1, 1):
        if a < b:
            run = (b - 1) // a if a > 1 else b - 1
            bits.append(("0", run))
            b -= run * a
        else:
            run = (a - 1) // b if b > 1 else a - 1
            bits.append(("1", run))
            a -= run * b
    digits = "".join(bit * run for bit, run in reversed(bits))
    return int("1" + digits, 2)


@lru_cache(maxsize=1 << 16)
def line_point(i: int) -> Fraction:
    """q(i): the i-th rational of the line enumeration."""
    if i < 0:
        raise ValueError("indices are natural numbers")
    if i == 0:
        return Fraction(0)
    k = (i + 1) // 2
    v = calkin_wilf(k)
    return v if i % 2 else -v


def line_index(x: Fraction) -> int:
    x = Fraction(x)
    if x == 0:
        return 0
    k = calkin_wilf_index(abs(x))
    return 2 * k - 1 if x > 0 else 2 * k


def pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + x


def unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    x = n - w * (w + 1) // 2
    return x, w - x


def unrank_tuple(n: int, arity: int) -> tuple:
    """Inverse of the shell-lexicographic enumeration of ``N^arity``."""
    if arity < 1:
        raise ValueError("arity must be positive")
    if arity == 1:
        return (n,)
    if arity == 2:
        return unpair(n)
    # shell s holds C(s + arity - 1, arity - 1) tuples
    s = 0
    while True:
        size = comb(s + arity - 1, arity - 1)
        if n < size:
            break
        n -= size
        s += 1
    out = []
    rest, left = s, arity
    while left > 1:
        x = 0
        while True:
            cnt = comb(rest - x + left - 2, left - 2)
            if n < cnt:
                break
            n -= cnt
            x += 1
        out.append(x)
        rest -= x
        left -= 1
    out.append(rest)
    return tuple(out)


def rank_tuple(t: tuple) -> int:
    arity = len(t)
    if arity == 1:
        return t[0]
    if arity == 2:
        return pair(*t)
    s = sum(t)
    n = sum(comb(j + arity - 1, arity - 1) for j in range(s))
    rest, left = s, arity
    for x in t[:-1]:
        n += sum(comb(rest - y + left - 2, left - 2) for y in range(x))
        rest -= x
        left -= 1
    return n


def grid_point(n: int) -> tuple[Fraction, Fraction]:
    """p_n, the n-th point of Q^2."""
    i, j = unpair(n)
    return line_point(i), line_point(j)


def grid_index(p) -> int:
    return pair(line_index(p[0]), line_index(p[1]))


def tuple_point(n: int, arity: int) -> tuple:
    return tuple(line_point(i) for i in unrank_tuple(n, arity))


def default_selector(r: int) -> int:
    """First coordinate of the inverse pairing; every fiber is infinite."""
    return unpair(r)[0]
