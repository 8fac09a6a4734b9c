"""Breaking functions for finite families of sets.

A family is t-breakable when some ``f: universe -> 0..t-1`` maps every member
onto all t values.  Two constructions live here: the diagonal selection from
Kuratowski's lemma, and the recursive splitting construction that carves out
disjoint pieces each meeting every member.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

# Members of M above this size switch the splitter search to random sampling.
EXHAUSTIVE_LIMIT = 16


class SelectionExhausted(Exception):
    """A member had no unassigned point left when the diagonal needed one."""

    def __init__(self, member: int, value: int, column: int | None = None):
        self.member = member
        self.value = value
        self.column = column
        where = f" in column {column}" if column is not None else ""
        super().__init__(f"member {member} has no fresh point for value {value}{where}")


class SplitterNotFound(Exception):
    def __init__(self, round_: int, context: str | None = None):
        self.round = round_
        self.context = context
        msg = f"no splitter found at round {round_}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


@dataclass(frozen=True)
class SubsetFamily:
    universe: int
    sets: tuple

    def __post_init__(self):
        sets = tuple(frozenset(int(x) for x in s) for s in self.sets)
        for s in sets:
            if any(not 0 <= x < self.universe for x in s):
                raise ValueError("member escapes the universe")
        object.__setattr__(self, "sets", sets)

    def __len__(self) -> int:
        return len(self.sets)

    def prefix(self, count: int) -> "SubsetFamily":
        return SubsetFamily(self.universe, self.sets[:count])

    def to_dict(self) -> dict:
        return {"universe": self.universe, "sets": [sorted(s) for s in self.sets]}

    @classmethod
    def from_dict(cls, data: dict) -> "SubsetFamily":
        return cls(int(data["universe"]), tuple(data["sets"]))


@dataclass(frozen=True)
class BreakingFunction:
    values: tuple
    range_size: int

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image(self, members) -> set:
        return {self.values[x] for x in members}

    def covers(self, members, required: int) -> bool:
        """True when the image of ``members`` contains ``0..required-1``."""
        return set(range(required)) <= self.image(members)

    def to_dict(self) -> dict:
        return {"values": list(self.values), "range": self.range_size}


def _diagonal_break(family: SubsetFamily, pairs, range_size: int, reuse: bool) -> BreakingFunction:
    values = [None] * family.universe
    have = [set() for _ in family.sets]
    sorted_sets = [sorted(s) for s in family.sets]
    for alpha, value in pairs:
        if reuse and value in have[alpha]:
            continue
        for x in sorted_sets[alpha]:
            if values[x] is None:
                break
        else:
            raise SelectionExhausted(alpha, value)
        values[x] = value
        # The new point may serve every member containing it.
        for k, s in enumerate(family.sets):
            if x in s:
                have[k].add(value)
    return BreakingFunction(tuple(0 if v is None else v for v in values), range_size)


def _shell_pairs(n_members: int, n_values: int, value_of):
    """Visit (member, value) slots shell by shell, as in Kuratowski's diagonal.

    In round ``beta``, for each ``alpha <= beta``: slot ``x_alpha^beta`` (member
    alpha, value beta) and then ``x_beta^alpha`` (member beta, value alpha).
    """
    for beta in range(max(n_members, n_values)):
        for alpha in range(beta + 1):
            if alpha < n_members and beta < n_values:
                yield alpha, value_of(beta)
            if alpha != beta and beta < n_members and alpha < n_values:
                yield beta, value_of(alpha)


def kuratowski_break(family: SubsetFamily, range_size: int, reuse: bool = False) -> BreakingFunction:
    """Diagonal selection giving ``f[A] >= {0..t-1}`` for every member A.

    Each of the n members receives one fresh point per round (values reduced
    mod ``range_size``), so n*n points are chosen overall; member sizes of at
    least n*n therefore never exhaust.  Fresh means the smallest unassigned
    index.  With ``reuse=True`` a slot is skipped when its member already
    contains a point of the wanted value, which is what lets dense finite
    families (all mu-subsets of a small set) be broken at all.
    """
    n = len(family)
    if n == 0:
        raise ValueError("family must be nonempty")
    if not 1 <= range_size <= n:
        raise ValueError(f"range size must lie in 1..{n}")
    return _diagonal_break(family, _shell_pairs(n, n, lambda b: b % range_size), range_size, reuse)


def prefix_break(family: SubsetFamily, depth: int, range_size: int, reuse: bool = False) -> BreakingFunction:
    """A function into ``0..range_size-1`` whose image on every member contains ``0..depth-1``."""
    if not 0 <= depth <= range_size:
        raise ValueError("depth must lie in 0..range_size")
    if depth == 0 or len(family) == 0:
        return BreakingFunction((0,) * family.universe, range_size)
    return _diagonal_break(family, _shell_pairs(len(family), depth, lambda b: b), range_size, reuse)


@dataclass
class SplitTrace:
    rounds: list = field(default_factory=list)  # (M_n, S_n, R_n) triples
    residual: frozenset = frozenset()

    @property
    def pieces(self) -> list:
        return [r for _, _, r in self.rounds]

    def to_dict(self) -> dict:
        return {
            "rounds": [{"M": sorted(m), "S": sorted(s), "R": sorted(r)} for m, s, r in self.rounds],
            "residual": sorted(self.residual),
        }


def _splits(S: frozenset, traces, threshold: int) -> bool:
    return all(len(t & S) >= threshold and len(t - S) >= threshold for t in traces)


def find_splitter(M: frozenset, traces: Sequence[frozenset], threshold: int, rng: random.Random,
                  tries: int, keep: float = 0.5) -> frozenset | None:
    """A subset S of M splitting every trace, or None.

    Small M is searched exhaustively, candidates ordered by the size of the
    removed part ``M \\ S`` (smallest first, then lexicographically).  Large M
    is sampled: each point is removed independently with probability
    ``1 - keep``.
    """
    if _splits(M, traces, threshold):
        return M
    elems = sorted(M)
    if len(elems) <= EXHAUSTIVE_LIMIT:
        for size in range(len(elems) + 1):
            for removed in combinations(elems, size):
                S = M.difference(removed)
                if _splits(S, traces, threshold):
                    return S
        return None
    for _ in range(tries):
        S = frozenset(x for x in elems if rng.random() < keep)
        if _splits(S, traces, threshold):
            return S
    return None


def split_family(H: SubsetFamily, parts: int, seed: int = 0, tries: int = 20000,
                 threshold: int = 1) -> tuple[SplitTrace, BreakingFunction]:
    """Run ``parts`` rounds of the splitting recursion.

    Round n looks for ``S_n`` inside ``M_n`` splitting every trace ``A & M_n``;
    then ``R_n = M_n - S_n`` and ``M_{n+1} = S_n``.  Each ``R_n`` meets every
    member, so ``f = n on R_n`` (0 elsewhere) breaks H into ``parts`` values.
    Random rounds draw from a stream seeded by ``(seed, n)``.
    """
    if parts < 1:
        raise ValueError("parts must be positive")
    if any(not s for s in H.sets):
        raise ValueError("members must be nonempty")
    M = frozenset(range(H.universe))
    trace = SplitTrace()
    for n in range(parts):
        traces = [s & M for s in H.sets]
        rng = random.Random(f"split:{seed}:{n}")
        # Spread points so that each remaining round gets a fair share.
        keep = (parts - n) / (parts - n + 1)
        S = find_splitter(M, traces, threshold, rng, tries, keep)
        if S is None:
            raise SplitterNotFound(n)
        trace.rounds.append((M, S, M - S))
        M = S
    trace.residual = M
    values = [0] * H.universe
    for n, R in enumerate(trace.pieces):
        for x in R:
            values[x] = n
    return trace, BreakingFunction(tuple(values), parts)
