"""Dense partitions of enumerated rational spaces, computed exactly.

Two constructions run here.  The order-type partition sorts a point of Q^n by
the enumeration indices of its coordinates.  The K-construction assigns every
point p_n of Q^2 an open subset K(p_n) of a horizontal or vertical line
through it; chains through these sets define ranks, and ranks fed through a
selector give the classes.  Everything is exact rational interval arithmetic.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from . import rationals
from .intervals import ClosedUnion, OpenUnion, hi_key, lo_key
from .report import WitnessReport

H = "horizontal"
V = "vertical"


class InvariantBreach(AssertionError):
    pass


class UniquenessBreach(AssertionError):
    pass


def permutation_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank (Lehmer code) of a permutation of ``0..n-1``."""
    n = len(perm)
    rank = 0
    rest = sorted(perm)
    for i, v in enumerate(perm):
        pos = rest.index(v)
        rank += pos * factorial(n - 1 - i)
        rest.pop(pos)
    return rank


def permutation_unrank(rank: int, n: int) -> tuple:
    rest = list(range(n))
    out = []
    for i in range(n):
        f = factorial(n - 1 - i)
        pos, rank = divmod(rank, f)
        out.append(rest.pop(pos))
    return tuple(out)


def order_type_class(point: Sequence[Fraction]) -> int | None:
    """Rank of the permutation sorting the coordinates' enumeration indices, or None on a repeat."""
    alphas = [rationals.line_index(x) for x in point]
    if len(set(alphas)) != len(alphas):
        return None
    perm = sorted(range(len(alphas)), key=alphas.__getitem__)
    return permutation_rank(perm)


@dataclass(frozen=True)
class LinearOpenSet:
    """Points of one fiber whose moving coordinate lies in ``intervals``."""

    axis: str
    coord: Fraction
    intervals: OpenUnion

    def moving(self, p) -> Fraction:
        return p[0] if self.axis == H else p[1]

    def on_line(self, p) -> bool:
        return (p[1] if self.axis == H else p[0]) == self.coord

    def contains(self, p) -> bool:
        return self.on_line(p) and self.intervals.contains(self.moving(p))

    @cached_property
    def _closure(self) -> ClosedUnion:
        return self.intervals.closure()

    def closure(self) -> ClosedUnion:
        return self._closure

    def closure_contains(self, p) -> bool:
        return self.on_line(p) and self.closure().contains(self.moving(p))

    def to_dict(self) -> dict:
        return {"axis": self.axis, "coord": f"{self.coord.numerator}/{self.coord.denominator}",
                "intervals": self.intervals.to_list()}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearOpenSet":
        return cls(d["axis"], Fraction(d["coord"]), OpenUnion.from_list(d["intervals"]))


@dataclass
class _Line:
    members: list = field(default_factory=list)
    closure: ClosedUnion = ClosedUnion()


@dataclass
class KAssignment:
    """K(p_n) for every n below the horizon, with per-line indexes."""

    horizon: int
    points: list
    sets: list
    provenance: list
    lines: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "entries": [
                {"n": n, "point": [f"{x.numerator}/{x.denominator}" for x in self.points[n]],
                 "K": self.sets[n].to_dict(), "provenance": self.provenance[n]}
                for n in range(self.horizon)
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "KAssignment":
        ka = cls(d["horizon"], [], [], [])
        for e in d["entries"]:
            ka.points.append(tuple(Fraction(x) for x in e["point"]))
            ka.sets.append(LinearOpenSet.from_dict(e["K"]))
            ka.provenance.append(e["provenance"])
        ka.reindex()
        return ka

    def reindex(self) -> None:
        self.lines = {}
        for n, K in enumerate(self.sets):
            line = self.lines.setdefault((K.axis, K.coord), _Line())
            line.members.append(n)
            line.closure = line.closure.union(K.closure())

    def line_members(self, axis: str, coord: Fraction) -> list:
        line = self.lines.get((axis, coord))
        return line.members if line else []


def _ratstr(v) -> str:
    return f"{v.numerator}/{v.denominator}"


class KBuilder:
    """Incremental K-construction; ``extend(N)`` grows the horizon to N."""

    def __init__(self):
        self.points: list = []
        self.sets: list = []
        self.provenance: list = []
        self.lines: dict = {}
        self.coords = {H: [], V: []}  # sorted fixed coordinates of lines carrying a K

    def _line(self, axis, coord) -> _Line:
        return self.lines.get((axis, coord))

    def _closures_containing(self, axis, coord, t) -> list:
        line = self._line(axis, coord)
        if line is None or not line.closure.contains(t):
            return []
        return [i for i in line.members if self.sets[i].closure().contains(t)]

    def _nearest_crossing(self, cross_axis, pos, t, lo_side: bool):
        """Nearest line of ``cross_axis`` strictly beyond ``pos`` whose closure-union contains t."""
        coords = self.coords[cross_axis]
        if lo_side:
            k = bisect.bisect_left(coords, pos) - 1
            while k >= 0:
                if self.lines[(cross_axis, coords[k])].closure.contains(t):
                    return coords[k]
                k -= 1
        else:
            k = bisect.bisect_right(coords, pos)
            while k < len(coords):
                if self.lines[(cross_axis, coords[k])].closure.contains(t):
                    return coords[k]
                k += 1
        return None

    def step(self) -> None:
        n = len(self.points)
        p = rationals.grid_point(n)
        x, y = p
        d_h = self._closures_containing(H, y, x)
        d_v = self._closures_containing(V, x, y)
        if d_h and d_v:
            raise InvariantBreach(f"p_{n} lies in closures of orthogonal sets {d_h} and {d_v}")
        axis = V if d_h else H
        # Along L: fixed coordinate, moving coordinate of p_n; crossing lines are the other axis.
        fixed, move = (y, x) if axis == H else (x, y)
        cross = V if axis == H else H
        # Case II: orthogonal sets whose closure meets L at z != p_n; only the
        # nearest crossing on each side binds, at half the distance.
        left = self._nearest_crossing(cross, move, fixed, True)
        right = self._nearest_crossing(cross, move, fixed, False)
        radius = None
        binding = []
        for z in (left, right):
            if z is None:
                continue
            r = abs(z - move) / 2
            if radius is None or r < radius:
                radius = r
            binding.append(_ratstr(z))
        lo, hi = (None, None) if radius is None else (move - radius, move + radius)
        # Case I: remove the closures of the sets already on L.
        same = self._line(axis, fixed)
        case1 = []
        if same is None:
            K = OpenUnion.interval(lo, hi)
        else:
            if same.closure.contains(move):
                raise InvariantBreach(f"p_{n} inside a same-line closure")
            K = same.closure.gaps_within(lo, hi)
            case1 = list(same.members)
        if not K.contains(move):
            raise InvariantBreach(f"p_{n} not in its own K")
        kset = LinearOpenSet(axis, fixed, K)
        self.points.append(p)
        self.sets.append(kset)
        self.provenance.append({
            "L": axis,
            "closureOf": d_h or d_v,
            "caseI": case1,
            "caseII": binding,
            "radius": _ratstr(radius) if radius is not None else None,
        })
        key = (axis, fixed)
        line = self.lines.get(key)
        if line is None:
            line = self.lines[key] = _Line()
            bisect.insort(self.coords[axis], fixed)
        line.members.append(n)
        line.closure = line.closure.union(kset.closure())

    def extend(self, horizon: int) -> KAssignment:
        while len(self.points) < horizon:
            self.step()
        return self.snapshot(horizon)

    def snapshot(self, horizon: int) -> KAssignment:
        ka = KAssignment(horizon, self.points[:horizon], self.sets[:horizon], self.provenance[:horizon])
        if horizon == len(self.points):
            ka.lines = self.lines
        else:
            ka.reindex()
        return ka


def build_k_assignment(N: int) -> KAssignment:
    if N < 1:
        raise ValueError("horizon must be positive")
    return KBuilder().extend(N)


def _line_pieces(ka: KAssignment, members) -> list:
    """All intervals of the given members as ``(lo, hi, n)``, sorted by left end."""
    out = [(lo, hi, n) for n in members for lo, hi in ka.sets[n].intervals.parts]
    out.sort(key=lambda t: lo_key(t[0]))
    return out


def _line_overlaps(ka: KAssignment, members) -> list:
    """Pairs ``(m, n)``, m < n, whose open sets on one line meet (sweep by left end)."""
    found = set()
    active = []  # (hi_key, n) of intervals still open at the sweep point
    for lo, hi, n in _line_pieces(ka, members):
        k = lo_key(lo)
        active = [(h, b) for h, b in active if h > k]
        for _, b in active:
            if b != n:
                found.add((min(b, n), max(b, n)))
        active.append((hi_key(hi), n))
    return sorted(found, key=lambda t: (t[1], t[0]))


def _closure_hits(entry, t) -> list:
    """Members whose closure holds t, given a non-overlapping piece index of one line."""
    keys, pieces = entry
    k = (1, t)
    i = bisect.bisect_right(keys, k) - 1
    out = []
    # open pieces are disjoint, so only the last two starting at or before t can reach it
    for j in (i - 1, i):
        if j >= 0 and k <= hi_key(pieces[j][1]) and pieces[j][2] not in out:
            out.append(pieces[j][2])
    return out


def verify_k_conditions(ka: KAssignment) -> WitnessReport:
    """Check both conditions for every pair m < n < N, line by line.

    Parallel sets on distinct lines are disjoint outright, and two orthogonal
    lines cross in one point z, so it is enough to look at each line's own
    members and at every crossing point.
    """
    rep = WitnessReport()
    if not ka.lines:
        ka.reindex()
    index = {}
    for key, line in ka.lines.items():
        bad = _line_overlaps(ka, line.members)
        for i, j in bad:
            rep.fail("collinear-overlap", m=i, n=j)
        if not bad:
            pieces = _line_pieces(ka, line.members)
            index[key] = ([lo_key(lo) for lo, _, _ in pieces], pieces)
    h_lines = [(c, l) for (ax, c), l in ka.lines.items() if ax == H]
    v_coords = sorted(c for ax, c in ka.lines if ax == V)
    for y, hl in h_lines:
        # only vertical lines crossing this line's closure can clash
        xs = []
        for a, b in hl.closure.parts:
            i = 0 if a is None else bisect.bisect_left(v_coords, a)
            j = len(v_coords) if b is None else bisect.bisect_right(v_coords, b)
            xs.extend(v_coords[i:j])
        for x in xs:
            vl = ka.lines[(V, x)]
            if not vl.closure.contains(y):
                continue
            if (H, y) in index:
                hs = _closure_hits(index[(H, y)], x)
            else:
                hs = [i for i in hl.members if ka.sets[i].closure().contains(x)]
            if (V, x) in index:
                vs = _closure_hits(index[(V, x)], y)
            else:
                vs = [j for j in vl.members if ka.sets[j].closure().contains(y)]
            for i in hs:
                for j in vs:
                    later = max(i, j)
                    if ka.points[later] != (x, y):
                        rep.fail("orthogonal-closures", m=min(i, j), n=later,
                                 z=[_ratstr(x), _ratstr(y)])
    rep.violations.sort(key=lambda v: (v["n"], v["m"]))
    rep.stats = {"horizon": ka.horizon, "pairsCovered": ka.horizon * (ka.horizon - 1) // 2}
    return rep


def verify_k_conditions_naive(ka: KAssignment) -> WitnessReport:
    """Same check by brute force over all pairs; quadratic, for cross-validation."""
    rep = WitnessReport()
    for n in range(ka.horizon):
        Kn = ka.sets[n]
        for m in range(n):
            Km = ka.sets[m]
            if Km.axis == Kn.axis:
                if Km.coord == Kn.coord and not Km.intervals.intersection(Kn.intervals).is_empty():
                    rep.fail("collinear-overlap", m=m, n=n)
                continue
            hz, vt = (Km, Kn) if Km.axis == H else (Kn, Km)
            z = (vt.coord, hz.coord)
            if hz.closure_contains(z) and vt.closure_contains(z) and z != ka.points[n]:
                rep.fail("orthogonal-closures", m=m, n=n, z=[_ratstr(z[0]), _ratstr(z[1])])
    return rep


@dataclass
class RankTable:
    horizon: int
    rank: list
    predecessor: list

    def to_dict(self) -> dict:
        return {"horizon": self.horizon, "rank": self.rank, "predecessor": self.predecessor}


def rank_table(ka: KAssignment) -> RankTable:
    """Predecessor of p_n is the unique b != n with p_n in K(p_b); rank counts the chain."""
    if not ka.lines:
        ka.reindex()
    index = {}
    for key, line in ka.lines.items():
        bad = _line_overlaps(ka, line.members)
        if bad:
            raise UniquenessBreach(f"collinear sets {bad[0]} overlap")
        pieces = _line_pieces(ka, line.members)
        index[key] = ([lo_key(lo) for lo, _, _ in pieces], pieces)

    def hit(axis, coord, t, n):
        entry = index.get((axis, coord))
        if entry is None:
            return []
        keys, pieces = entry
        i = bisect.bisect_left(keys, (1, t)) - 1
        if i >= 0 and (1, t) < hi_key(pieces[i][1]) and pieces[i][2] != n:
            return [pieces[i][2]]
        return []

    rank, pred = [], []
    for n, (x, y) in enumerate(ka.points):
        hits = hit(H, y, x, n) + hit(V, x, y, n)
        if len(hits) > 1:
            raise UniquenessBreach(f"p_{n} lies in K of {hits}")
        if hits:
            b = hits[0]
            if b > n:
                raise UniquenessBreach(f"predecessor {b} of p_{n} comes later")
            pred.append(b)
            rank.append(rank[b] + 1)
        else:
            pred.append(None)
            rank.append(0)
    return RankTable(ka.horizon, rank, pred)


Box = tuple  # ((lo, hi), (lo, hi), ...) open, rational ends


def in_box(point, box) -> bool:
    return all(lo < x < hi for x, (lo, hi) in zip(point, box))


def random_boxes(count: int, seed: int = 0, arity: int = 2, bound: int = 3) -> list:
    """Seeded open boxes inside ``(-bound, bound)^arity`` with rational ends.

    Each side has a center on the 1/100 grid and a half-width in [1/4, 1],
    clipped to the bounding cube.
    """
    rng = random.Random(f"boxes:{seed}:{arity}")
    boxes = []
    for _ in range(count):
        sides = []
        for _ in range(arity):
            c = Fraction(rng.randint(-100 * bound, 100 * bound), 100)
            h = Fraction(rng.randint(25, 100), 100)
            sides.append((max(Fraction(-bound), c - h), min(Fraction(bound), c + h)))
        boxes.append(tuple(sides))
    return boxes


def box_to_list(box) -> list:
    return [[_ratstr(lo), _ratstr(hi)] for lo, hi in box]


def box_from_list(items) -> tuple:
    return tuple((Fraction(lo), Fraction(hi)) for lo, hi in items)


def density_audit_ktree(ka: KAssignment, rt: RankTable, boxes: Sequence, classes: int,
                        selector: Callable[[int], int] = rationals.default_selector,
                        horizon: int | None = None) -> WitnessReport:
    """For each box and class, the least n below the horizon with p_n in the box and selector(rank) = class."""
    N = ka.horizon if horizon is None else horizon
    rep = WitnessReport()
    table = []
    for box in boxes:
        first = [None] * classes
        max_rank = None
        for n in range(N):
            if not in_box(ka.points[n], box):
                continue
            r = rt.rank[n]
            max_rank = r if max_rank is None else max(max_rank, r)
            k = selector(r)
            if k < classes and first[k] is None:
                first[k] = n
        table.append({"box": box_to_list(box), "first": first, "maxRank": max_rank})
        for k, hit in enumerate(first):
            if hit is None:
                rep.fail("miss", box=box_to_list(box), cls=k)
    rep.artifacts["boxes"] = table
    rep.stats = {"horizon": N, "classes": classes, "mode": "ktree"}
    return rep


def density_audit_ordertype(boxes: Sequence, arity: int, horizon: int) -> WitnessReport:
    """For each box in Q^arity and each permutation class, the least index hitting it."""
    classes = factorial(arity)
    points = [(rationals.tuple_point(n, arity)) for n in range(horizon)]
    labels = [order_type_class(pt) for pt in points]
    rep = WitnessReport()
    table = []
    for box in boxes:
        first = [None] * classes
        for n, pt in enumerate(points):
            k = labels[n]
            if k is not None and first[k] is None and in_box(pt, box):
                first[k] = n
        table.append({"box": box_to_list(box), "first": first})
        for k, hit in enumerate(first):
            if hit is None:
                rep.fail("miss", box=box_to_list(box), cls=k)
    rep.artifacts["boxes"] = table
    rep.artifacts["permutations"] = [list(permutation_unrank(k, arity)) for k in range(classes)]
    rep.stats = {"horizon": horizon, "classes": classes, "mode": "ordertype", "arity": arity}
    return rep


def max_rank_per_box(ka: KAssignment, rt: RankTable, boxes: Sequence, horizons: Sequence[int]) -> list:
    """``out[b][h]``: largest rank among points of box b with index below ``horizons[h]``."""
    out = []
    for box in boxes:
        row = []
        best = None
        n = 0
        for H_ in horizons:
            while n < H_:
                if in_box(ka.points[n], box):
                    r = rt.rank[n]
                    best = r if best is None else max(best, r)
                n += 1
            row.append(best)
        out.append(row)
    return out
