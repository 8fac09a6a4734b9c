"""Exact unions of intervals on a rational line.

Endpoints are ``Fraction`` values or ``None`` for an infinite end (``-inf`` on
the left, ``+inf`` on the right).  Sets are read inside Q, so the closure of an
open interval with rational ends is the closed interval with the same ends.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

NEG = (0,)
POS = (2,)


def lo_key(v):
    return NEG if v is None else (1, v)


def hi_key(v):
    return POS if v is None else (1, v)


def _fmt(v, left: bool) -> str:
    if v is None:
        return "-inf" if left else "+inf"
    return f"{v.numerator}/{v.denominator}"


def _parse(s: str):
    if s in ("-inf", "+inf"):
        return None
    return Fraction(s)


@dataclass(frozen=True)
class ClosedUnion:
    """Disjoint, non-touching closed intervals ``[lo, hi]`` in ascending order."""

    parts: tuple = ()

    @cached_property
    def _hi_keys(self) -> list:
        return [hi_key(hi) for _, hi in self.parts]

    def contains(self, x) -> bool:
        k = (1, x)
        i = bisect.bisect_left(self._hi_keys, k)
        return i < len(self.parts) and lo_key(self.parts[i][0]) <= k

    def is_empty(self) -> bool:
        return not self.parts

    def gaps_within(self, lo, hi) -> "OpenUnion":
        """The open interval ``(lo, hi)`` minus this set."""
        out = []
        cur = lo
        i = bisect.bisect_right(self._hi_keys, lo_key(lo))
        while i < len(self.parts):
            a, b = self.parts[i]
            if lo_key(a) >= hi_key(hi):
                break
            if lo_key(a) > lo_key(cur):
                out.append((cur, a))
            if b is None:
                return OpenUnion(tuple(out))
            if (1, b) > lo_key(cur):
                cur = b
            i += 1
        if lo_key(cur) < hi_key(hi):
            out.append((cur, hi))
        return OpenUnion(tuple(out))

    @staticmethod
    def normalize(parts) -> "ClosedUnion":
        items = sorted(parts, key=lambda p: lo_key(p[0]))
        out = []
        for lo, hi in items:
            if out and lo_key(lo) <= hi_key(out[-1][1]):
                if hi_key(hi) > hi_key(out[-1][1]):
                    out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        return ClosedUnion(tuple(out))

    def union(self, other: "ClosedUnion") -> "ClosedUnion":
        return ClosedUnion.normalize(self.parts + other.parts)

    def intersection(self, other: "ClosedUnion") -> "ClosedUnion":
        out = []
        for a_lo, a_hi in self.parts:
            for b_lo, b_hi in other.parts:
                lo = a_lo if lo_key(a_lo) >= lo_key(b_lo) else b_lo
                hi = a_hi if hi_key(a_hi) <= hi_key(b_hi) else b_hi
                if lo_key(lo) <= hi_key(hi):
                    out.append((lo, hi))
        return ClosedUnion.normalize(out)


@dataclass(frozen=True)
class OpenUnion:
    """Disjoint nonempty open intervals ``(lo, hi)`` in ascending order."""

    parts: tuple = ()

    @classmethod
    def full(cls) -> "OpenUnion":
        return cls(((None, None),))

    @classmethod
    def interval(cls, lo, hi) -> "OpenUnion":
        return cls(((lo, hi),)) if lo_key(lo) < hi_key(hi) else cls()

    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, x) -> bool:
        k = (1, x)
        return any(lo_key(lo) < k < hi_key(hi) for lo, hi in self.parts)

    def component(self, x):
        """The interval containing x, or None."""
        k = (1, x)
        for lo, hi in self.parts:
            if lo_key(lo) < k < hi_key(hi):
                return lo, hi
        return None

    def closure(self) -> ClosedUnion:
        return ClosedUnion.normalize(self.parts)

    def intersect_interval(self, lo, hi) -> "OpenUnion":
        out = []
        for a_lo, a_hi in self.parts:
            n_lo = a_lo if lo_key(a_lo) >= lo_key(lo) else lo
            n_hi = a_hi if hi_key(a_hi) <= hi_key(hi) else hi
            if lo_key(n_lo) < hi_key(n_hi):
                out.append((n_lo, n_hi))
        return OpenUnion(tuple(out))

    def intersection(self, other: "OpenUnion") -> "OpenUnion":
        out = []
        for lo, hi in other.parts:
            out.extend(self.intersect_interval(lo, hi).parts)
        return OpenUnion(tuple(sorted(out, key=lambda p: lo_key(p[0]))))

    def subtract_closed(self, closed: ClosedUnion) -> "OpenUnion":
        """Remove a closed set; what is left is again a finite open union."""
        parts = list(self.parts)
        for c_lo, c_hi in closed.parts:
            nxt = []
            for lo, hi in parts:
                # left remainder (lo, c_lo) and right remainder (c_hi, hi)
                if c_lo is not None and lo_key(lo) < (1, c_lo):
                    r_hi = hi if hi_key(hi) <= (1, c_lo) else c_lo
                    nxt.append((lo, r_hi))
                if c_hi is not None and (1, c_hi) < hi_key(hi):
                    r_lo = lo if lo_key(lo) >= (1, c_hi) else c_hi
                    nxt.append((r_lo, hi))
            parts = nxt
        return OpenUnion(tuple(sorted(parts, key=lambda p: lo_key(p[0]))))

    def union(self, other: "OpenUnion") -> "OpenUnion":
        items = sorted(self.parts + other.parts, key=lambda p: lo_key(p[0]))
        out = []
        for lo, hi in items:
            # Overlap merges; sharing only an endpoint does not (the point is missing).
            if out and lo_key(lo) < hi_key(out[-1][1]):
                if hi_key(hi) > hi_key(out[-1][1]):
                    out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        return OpenUnion(tuple(out))

    def to_list(self) -> list:
        return [[_fmt(lo, True), _fmt(hi, False)] for lo, hi in self.parts]

    @classmethod
    def from_list(cls, items) -> "OpenUnion":
        return cls(tuple((_parse(lo), _parse(hi)) for lo, hi in items))
