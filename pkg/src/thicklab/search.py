"""Complete search for partitions of ``[m] x [m]`` into p (mu, nu)-thick classes."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

from . import grid, kernels
from .grid import GridColoring
from .report import WitnessReport

SAT = "SAT"
UNSAT = "UNSAT"
BUDGET = "budget-exceeded"

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class SearchProblem:
    m: int
    mu: int
    nu: int
    p: int

    def __post_init__(self):
        if self.m < 1 or self.p < 1:
            raise ValueError("need m >= 1 and p >= 1")
        if not (1 <= self.mu <= self.m and 1 <= self.nu <= self.m):
            raise ValueError("need 1 <= mu, nu <= m")

    def to_dict(self) -> dict:
        return {"m": self.m, "mu": self.mu, "nu": self.nu, "p": self.p}


@dataclass
class SearchOutcome:
    status: str
    certificate: GridColoring | None = None
    nodes: int = 0
    prunes: int = 0
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        # Wall time stays out: reports must be byte-identical across runs.
        return {
            "status": self.status,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "stats": {"nodes": self.nodes, "prunes": self.prunes},
        }


def solve(prob: SearchProblem, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Backtracking over cells in row-major order with rectangle counting.

    A branch dies as soon as some rectangle has fewer undecided cells than
    classes still missing from it.  Node counts are deterministic.
    """
    start = time.perf_counter()
    status, cells, nodes, prunes = kernels.search_partition(prob.m, prob.mu, prob.nu, prob.p, budget)
    cert = GridColoring.from_flat(prob.m, prob.m, prob.p, cells) if status == 1 else None
    name = {1: SAT, 0: UNSAT, -1: BUDGET}[status]
    out = SearchOutcome(name, cert, nodes, prunes, time.perf_counter() - start)
    if cert is not None and not verify_certificate(cert, prob).passed:
        raise AssertionError("solver returned an invalid certificate")
    return out


def verify_certificate(coloring: GridColoring, prob: SearchProblem) -> WitnessReport:
    """Pass iff the coloring is a total p-class partition with every class (mu, nu)-thick."""
    if (coloring.rows, coloring.cols) != (prob.m, prob.m):
        raise ValueError(f"expected a {prob.m}x{prob.m} grid, got {coloring.rows}x{coloring.cols}")
    if coloring.class_count > prob.p:
        raise ValueError(f"coloring uses {coloring.class_count} classes, problem allows {prob.p}")
    rep = WitnessReport()
    if not coloring.is_total():
        rep.fail("not-total")
    for k in range(prob.p):
        cls = coloring.class_cells(k) if k < coloring.class_count else grid.CellSet(prob.m, prob.m)
        w = grid.find_failing_rectangle(cls, prob.mu, prob.nu)
        if w is not None:
            rep.fail("not-thick", cls=k, witness=w.to_dict())
            break
    return rep


@dataclass
class TableCell:
    m: int
    mu: int
    nu: int
    value: int  # largest p shown SAT
    status: str  # "exact" or "unknown" (then value is only a lower bound)
    certificate: GridColoring | None = None

    def to_dict(self) -> dict:
        return {"m": self.m, "mu": self.mu, "nu": self.nu, "T": self.value, "status": self.status,
                "certificate": self.certificate.to_dict() if self.certificate else None}


def thick_number(m: int, mu: int, nu: int, budget: int = DEFAULT_BUDGET) -> TableCell:
    """Largest p for which ``[m] x [m]`` splits into p (mu, nu)-thick classes.

    SAT is monotone in p (merging two thick classes keeps them thick), so a
    binary search over ``1..mu*nu`` applies; p = 1 is always SAT.
    """
    lo, hi = 1, mu * nu
    best = solve(SearchProblem(m, mu, nu, 1), budget).certificate
    unknown = False
    while lo < hi:
        mid = (lo + hi + 1) // 2
        out = solve(SearchProblem(m, mu, nu, mid), budget)
        if out.status == SAT:
            lo, best = mid, out.certificate
        elif out.status == UNSAT:
            hi = mid - 1
        else:
            unknown = True
            hi = mid - 1
    return TableCell(m, mu, nu, lo, "unknown" if unknown else "exact", best)


def thick_number_table(m_max: int = 6, mu_nu_range: tuple[int, int] | None = None,
                       budget: int = DEFAULT_BUDGET) -> list[TableCell]:
    """T(m, mu, nu) for ``1 <= m <= m_max`` and mu, nu in range (clipped to m)."""
    lo, hi = mu_nu_range or (1, m_max)
    rows = []
    for m in range(1, m_max + 1):
        for mu in range(max(lo, 1), min(hi, m) + 1):
            for nu in range(max(lo, 1), min(hi, m) + 1):
                rows.append(thick_number(m, mu, nu, budget))
    return rows


def table_csv(rows: list[TableCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "mu", "nu", "T", "status"])
    for r in rows:
        w.writerow([r.m, r.mu, r.nu, r.value, r.status])
    return buf.getvalue()


def monotonicity_violations(rows: list[TableCell]) -> list[tuple]:
    """Pairs breaking ``T(m, mu', nu') >= T(m, mu, nu)`` for ``mu' >= mu, nu' >= nu``.

    Only exact cells are compared; an unknown cell is a lower bound and can
    only be trusted on the smaller side.
    """
    bad = []
    for a in rows:
        for b in rows:
            if a.m != b.m or (a.mu, a.nu) == (b.mu, b.nu):
                continue
            if b.mu >= a.mu and b.nu >= a.nu and b.status == "exact" and b.value < a.value:
                bad.append(((a.m, a.mu, a.nu), (b.m, b.mu, b.nu)))
    return bad
