"""Grid partitions assembled column by column from breaking functions.

Rows are the ground set ``0..m-1``; column ``beta`` carries a function
``f_beta`` that breaks the first ``delta_beta`` members of an enumerated
family of mu-subsets, and cell ``(a, beta)`` gets class ``f_beta(a)``.

Finite feasibility: for all mu-subsets of ``[m]`` to see t values, each value
must occupy more than ``m - mu`` rows, so ``t * (m - mu + 1) <= m`` is needed.
Small demos therefore keep mu close to m.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import grid
from .breakers import (BreakingFunction, SelectionExhausted, SplitterNotFound, SubsetFamily,
                       kuratowski_break, prefix_break, split_family)
from .grid import BlockMap, GridColoring
from .report import WitnessReport

TAU = "tau"
LAMBDA = "lambda"


@dataclass(frozen=True)
class FamilyEnumeration:
    ground: int
    mu: int
    members: tuple
    mode: str = "custom"

    def __post_init__(self):
        members = tuple(tuple(sorted(a)) for a in self.members)
        for a in members:
            if len(a) != self.mu or len(set(a)) != self.mu:
                raise ValueError(f"member {a} is not a {self.mu}-subset")
            if any(not 0 <= x < self.ground for x in a):
                raise ValueError(f"member {a} escapes 0..{self.ground - 1}")
        object.__setattr__(self, "members", members)

    @classmethod
    def all_subsets(cls, m: int, mu: int) -> "FamilyEnumeration":
        """Every mu-subset of ``0..m-1`` in colexicographic order."""
        subsets = sorted(combinations(range(m), mu), key=lambda a: a[::-1])
        return cls(m, mu, tuple(subsets), "all")

    @classmethod
    def sampled(cls, m: int, mu: int, count: int, seed: int = 0) -> "FamilyEnumeration":
        """``count`` distinct mu-subsets drawn without replacement, kept in colex order."""
        pool = sorted(combinations(range(m), mu), key=lambda a: a[::-1])
        rng = random.Random(f"family:{seed}")
        picked = sorted(rng.sample(range(len(pool)), min(count, len(pool))))
        return cls(m, mu, tuple(pool[i] for i in picked), "sampled")

    def __len__(self) -> int:
        return len(self.members)

    def as_family(self, count: int | None = None) -> SubsetFamily:
        members = self.members if count is None else self.members[:count]
        return SubsetFamily(self.ground, members)

    def to_dict(self) -> dict:
        return {"ground": self.ground, "mu": self.mu, "mode": self.mode,
                "members": [list(a) for a in self.members]}

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyEnumeration":
        return cls(int(data["ground"]), int(data["mu"]), tuple(tuple(a) for a in data["members"]),
                   data.get("mode", "custom"))


def default_thresholds(G: int, l: int) -> list[int]:
    """``delta_beta = ceil((beta + 1) * G / l)``: nondecreasing, ends at G."""
    return [-(-(b + 1) * G // l) for b in range(l)]


def _check_thresholds(thresholds: Sequence[int], l: int, G: int) -> list[int]:
    th = list(thresholds)
    if len(th) != l:
        raise ValueError(f"need {l} thresholds, got {len(th)}")
    if any(b < a for a, b in zip(th, th[1:])) or any(not 0 <= d <= G for d in th):
        raise ValueError("thresholds must be nondecreasing within 0..G")
    if l and th[-1] != G:
        raise ValueError("last threshold must equal the family size")
    return th


@dataclass(frozen=True)
class BreakSchedule:
    col_count: int
    thresholds: tuple
    per_column: tuple  # BreakingFunction per column

    def to_dict(self) -> dict:
        return {"colCount": self.col_count, "thresholds": list(self.thresholds),
                "perColumn": [list(f.values) for f in self.per_column]}

    @classmethod
    def from_dict(cls, data: dict, range_size: int) -> "BreakSchedule":
        funcs = tuple(BreakingFunction(tuple(v), range_size) for v in data["perColumn"])
        return cls(int(data["colCount"]), tuple(data["thresholds"]), funcs)


def _coloring_from(schedule: BreakSchedule, m: int, classes: int) -> GridColoring:
    cols = schedule.per_column
    return GridColoring.from_function(m, len(cols), classes, lambda a, b: cols[b](a))


def assemble_tau(fam: FamilyEnumeration, l: int, tau: int, thresholds: Sequence[int] | None = None,
                 breaker: str = "diagonal") -> tuple[GridColoring, BreakSchedule]:
    """Divide ``m x l`` into tau classes meeting ``A x {beta}`` whenever ``delta_beta > gamma``.

    ``breaker`` picks the per-column construction: ``"diagonal"`` (Kuratowski
    selection reusing points already carrying the wanted value),
    ``"kuratowski"`` (the literal selection, n*n fresh points), or ``"split"``
    (the splitting recursion with tau parts).
    """
    if tau < 1 or tau > max(fam.mu, 1):
        raise ValueError("tau must lie in 1..mu")
    th = _check_thresholds(default_thresholds(len(fam), l) if thresholds is None else thresholds,
                           l, len(fam))
    funcs = []
    for beta, delta in enumerate(th):
        prefix = fam.as_family(delta)
        if tau == 1 or delta == 0:
            funcs.append(BreakingFunction((0,) * fam.ground, tau))
            continue
        try:
            if breaker == "split":
                _, f = split_family(prefix, tau, seed=beta)
            elif tau > delta:
                # Fewer members than values: the value-indexed diagonal still applies.
                f = prefix_break(prefix, tau, tau, reuse=breaker != "kuratowski")
            else:
                f = kuratowski_break(prefix, tau, reuse=breaker != "kuratowski")
        except SelectionExhausted as exc:
            raise SelectionExhausted(exc.member, exc.value, column=beta) from None
        except SplitterNotFound as exc:
            raise SplitterNotFound(exc.round, context=f"column {beta}") from None
        funcs.append(f)
    schedule = BreakSchedule(l, tuple(th), tuple(funcs))
    return _coloring_from(schedule, fam.ground, tau), schedule


def assemble_lambda(fam: FamilyEnumeration, l: int, thresholds: Sequence[int] | None = None,
                    reuse: bool = True) -> tuple[GridColoring, BreakSchedule]:
    """Divide ``m x l`` into l classes; column beta's image on early members contains ``0..beta-1``."""
    th = _check_thresholds(default_thresholds(len(fam), l) if thresholds is None else thresholds,
                           l, len(fam))
    funcs = []
    for beta, delta in enumerate(th):
        try:
            funcs.append(prefix_break(fam.as_family(delta), beta, l, reuse=reuse))
        except SelectionExhausted as exc:
            raise SelectionExhausted(exc.member, exc.value, column=beta) from None
    schedule = BreakSchedule(l, tuple(th), tuple(funcs))
    return _coloring_from(schedule, fam.ground, l), schedule


def audit_assembly(coloring: GridColoring, fam: FamilyEnumeration, schedule: BreakSchedule,
                   variant: str = TAU) -> WitnessReport:
    """Check totality, the per-column breaking contract, and family-relative thickness.

    The contract is read off the coloring's own columns, so a tampered cell
    shows up as a violation at its ``(beta, gamma)``.
    """
    rep = WitnessReport()
    m, l = coloring.rows, coloring.cols
    classes = coloring.class_count
    if not coloring.is_total():
        rep.fail("not-total")
    grid.assert_disjoint(coloring)
    if l != schedule.col_count or m != fam.ground:
        rep.fail("shape-mismatch", rows=m, cols=l)
        return rep
    for beta, f in enumerate(schedule.per_column):
        for a in range(m):
            if coloring.table[a][beta] != f(a):
                rep.fail("schedule-mismatch", beta=beta, row=a)
                break
    for beta, delta in enumerate(schedule.thresholds):
        need = classes if variant == TAU else beta
        column = [coloring.table[a][beta] for a in range(m)]
        for gamma in range(delta):
            image = {column[a] for a in fam.members[gamma]}
            missing = sorted(set(range(need)) - image)
            if missing:
                rep.fail("breaking-contract", beta=beta, gamma=gamma, missing=missing)
    # Family-relative thickness: class xi meets A_gamma x {beta} for every
    # qualifying column (delta_beta > gamma, and beta > xi for the second variant).
    top = classes if variant == TAU else max(l - 1, 0)
    for gamma, A in enumerate(fam.members):
        for xi in range(top):
            cols = [b for b, d in enumerate(schedule.thresholds)
                    if d > gamma and (variant == TAU or b > xi)]
            if not cols:
                rep.fail("no-qualifying-column", gamma=gamma, xi=xi)
                continue
            for b in cols:
                if not any(coloring.table[a][b] == xi for a in A):
                    rep.fail("thickness", gamma=gamma, xi=xi, beta=b)
    rep.stats = {"rows": m, "cols": l, "classes": classes, "members": len(fam)}
    return rep


def full_thickness(coloring: GridColoring, mu: int, nu: int, report: WitnessReport | None = None) -> WitnessReport:
    """Run the grid-wide (mu, nu)-thickness oracle on every class."""
    rep = report if report is not None else WitnessReport()
    for k, cls in enumerate(coloring.classes()):
        w = grid.find_failing_rectangle(cls, mu, nu)
        if w is not None:
            rep.fail("not-thick", cls=k, mu=mu, nu=nu, witness=w.to_dict())
    return rep


SCENARIOS = ("square", "rectangle", "cofinal-lift", "unsplitting")


def run_scenario(name: str, *, m: int = 4, l: int | None = None, mu: int = 3, tau: int = 3,
                 rows: int | None = None, blocks: Sequence[int] | None = None,
                 family: FamilyEnumeration | None = None, seed: int = 0) -> tuple[GridColoring, WitnessReport]:
    """Compose the pipeline end to end at finite size and audit the result.

    ``square``: Core Lemma on ``m x m`` with all mu-subsets, tau classes, each
    class checked (mu, m)-thick.  ``rectangle``: the square restricted to the
    first ``rows`` rows, checked (mu, m)-thick again.  ``cofinal-lift``: an
    ``m x len(blocks)`` source lifted over consecutive blocks of the given
    sizes, checked against the graded column bound.  ``unsplitting``: the Core
    Lemma with the splitting recursion as column breaker.
    """
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    config = {"scenario": name, "m": m, "mu": mu, "tau": tau, "seed": seed}
    if name == "square":
        fam = family or FamilyEnumeration.all_subsets(m, mu)
        coloring, schedule = assemble_tau(fam, m, tau)
        rep = audit_assembly(coloring, fam, schedule, TAU)
        if fam.mode == "all":
            full_thickness(coloring, mu, m, rep)
    elif name == "rectangle":
        rows = mu if rows is None else rows
        fam = family or FamilyEnumeration.all_subsets(m, mu)
        square, schedule = assemble_tau(fam, m, tau)
        rep = audit_assembly(square, fam, schedule, TAU)
        coloring = GridColoring(rows, m, tau, square.table[:rows])
        config["rows"] = rows
        if fam.mode == "all":
            full_thickness(coloring, mu, m, rep)
    elif name == "cofinal-lift":
        sizes = list(blocks or (3, 1))
        c = len(sizes)
        fam = family or FamilyEnumeration.all_subsets(m, mu)
        source, schedule = assemble_tau(fam, c, tau)
        rep = audit_assembly(source, fam, schedule, TAU)
        bmap = BlockMap.consecutive(sizes)
        coloring = grid.lift_by_cofinality(source, bmap)
        config["blocks"] = sizes
        for nu in range(1, c + 1):
            src_ok = all(grid.is_thick(k, mu, nu) for k in source.classes())
            if src_ok:
                full_thickness(coloring, mu, grid.lifted_nu(bmap, nu), rep)
        rep.artifacts["source"] = source.to_dict()
    else:
        l = m if l is None else l
        fam = family or FamilyEnumeration.all_subsets(m, mu)
        try:
            coloring, schedule = assemble_tau(fam, l, tau, breaker="split")
        except SplitterNotFound as exc:
            raise SplitterNotFound(exc.round, context=f"unsplitting scenario, {exc.context}") from None
        rep = audit_assembly(coloring, fam, schedule, TAU)
        config["l"] = l
    rep.artifacts["config"] = config
    rep.artifacts["coloring"] = coloring.to_dict()
    return coloring, rep
