"""Finite grids, cell sets, colorings and the (mu, nu)-thickness oracle.

A cell set ``E`` inside ``rows x cols`` is (mu, nu)-thick when it meets every
combinatorial rectangle ``M x N`` with ``|M| = mu`` and ``|N| = nu``.  Rows and
columns are plain index ranges ``0..m-1``; rectangles need not be contiguous.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels

UNASSIGNED = -1


@dataclass(frozen=True)
class GroundSegment:
    size: int
    labels: tuple | None = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("segment size must be nonnegative")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("one label per index")

    def label(self, i: int) -> str:
        return str(self.labels[i]) if self.labels else str(i)


@dataclass(frozen=True)
class CellSet:
    rows: int
    cols: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        members = frozenset((int(r), int(c)) for r, c in self.members)
        for r, c in members:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"cell {(r, c)} outside {self.rows}x{self.cols}")
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, rows: int, cols: int) -> "CellSet":
        return cls(rows, cols, frozenset((r, c) for r in range(rows) for c in range(cols)))

    @classmethod
    def from_predicate(cls, rows: int, cols: int, pred) -> "CellSet":
        return cls(rows, cols, frozenset((r, c) for r in range(rows) for c in range(cols) if pred(r, c)))

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def row_masks(self) -> list[int]:
        masks = [0] * self.rows
        for r, c in self.members:
            masks[r] |= 1 << c
        return masks

    def complement(self) -> "CellSet":
        return CellSet.from_predicate(self.rows, self.cols, lambda r, c: (r, c) not in self.members)

    def union(self, other: "CellSet") -> "CellSet":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return CellSet(self.rows, self.cols, self.members | other.members)


@dataclass(frozen=True)
class RectangleWitness:
    M: tuple
    N: tuple

    def to_dict(self) -> dict:
        return {"M": list(self.M), "N": list(self.N)}


def find_failing_rectangle(E: CellSet, mu: int, nu: int) -> RectangleWitness | None:
    """Return the lexicographically least rectangle missing ``E``, or None.

    Rectangles compare by M first, then N.  When ``mu > rows`` or
    ``nu > cols`` no rectangle exists and the answer is None (vacuously thick).
    """
    if mu < 0 or nu < 0:
        raise ValueError("mu and nu must be nonnegative")
    if mu > E.rows or nu > E.cols:
        return None
    hit = kernels.least_failing_rectangle(E.row_masks(), E.cols, mu, nu)
    if hit is None:
        return None
    return RectangleWitness(tuple(hit[0]), tuple(hit[1]))


def is_thick(E: CellSet, mu: int, nu: int) -> bool:
    return find_failing_rectangle(E, mu, nu) is None


def restrict(E: CellSet, sub_rows: Iterable[int], sub_cols: Iterable[int]) -> CellSet:
    """``E`` intersected with ``sub_rows x sub_cols``, reindexed in ascending order."""
    rows = sorted(set(sub_rows))
    cols = sorted(set(sub_cols))
    for r in rows:
        if not 0 <= r < E.rows:
            raise IndexError(f"row {r} out of range")
    for c in cols:
        if not 0 <= c < E.cols:
            raise IndexError(f"column {c} out of range")
    rpos = {r: i for i, r in enumerate(rows)}
    cpos = {c: j for j, c in enumerate(cols)}
    members = frozenset((rpos[r], cpos[c]) for r, c in E.members if r in rpos and c in cpos)
    return CellSet(len(rows), len(cols), members)


@dataclass(frozen=True)
class GridColoring:
    """A possibly partial map from cells to class ids ``0..class_count-1``.

    ``table[r][c]`` holds the class id or ``UNASSIGNED``.  Classes are
    disjoint by construction since every cell carries one id.
    """

    rows: int
    cols: int
    class_count: int
    table: tuple

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        if len(table) != self.rows or any(len(row) != self.cols for row in table):
            raise ValueError("table shape does not match rows x cols")
        for row in table:
            for v in row:
                if v != UNASSIGNED and not 0 <= v < self.class_count:
                    raise ValueError(f"class id {v} outside 0..{self.class_count - 1}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(cls, rows: int, cols: int, class_count: int, fn) -> "GridColoring":
        return cls(rows, cols, class_count, tuple(tuple(fn(r, c) for c in range(cols)) for r in range(rows)))

    @classmethod
    def from_flat(cls, rows: int, cols: int, class_count: int, flat: Sequence[int]) -> "GridColoring":
        return cls(rows, cols, class_count, tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows)))

    def __getitem__(self, cell) -> int:
        r, c = cell
        return self.table[r][c]

    def is_total(self) -> bool:
        return all(v != UNASSIGNED for row in self.table for v in row)

    def class_cells(self, k: int) -> CellSet:
        return CellSet(self.rows, self.cols, frozenset(
            (r, c) for r in range(self.rows) for c in range(self.cols) if self.table[r][c] == k))

    def classes(self) -> list[CellSet]:
        return [self.class_cells(k) for k in range(self.class_count)]

    def with_cell(self, cell, k: int) -> "GridColoring":
        r, c = cell
        rows = [list(row) for row in self.table]
        rows[r][c] = k
        return GridColoring(self.rows, self.cols, self.class_count, tuple(map(tuple, rows)))

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "classCount": self.class_count,
            "cells": [[r, c, self.table[r][c]] for r in range(self.rows) for c in range(self.cols)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GridColoring":
        rows, cols = int(data["rows"]), int(data["cols"])
        table = [[UNASSIGNED] * cols for _ in range(rows)]
        for r, c, k in data["cells"]:
            table[r][c] = k
        return cls(rows, cols, int(data["classCount"]), tuple(map(tuple, table)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "GridColoring":
        return cls.from_dict(json.loads(text))


def cellset_coloring(E: CellSet) -> GridColoring:
    """Encode a single cell set as a one-class coloring (class 0, rest unassigned)."""
    return GridColoring.from_function(E.rows, E.cols, 1, lambda r, c: 0 if (r, c) in E else UNASSIGNED)


@dataclass(frozen=True)
class BlockMap:
    """A partition of the target columns ``0..l-1`` into nonempty blocks."""

    target_cols: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        seen = [c for b in blocks for c in b]
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        if sorted(seen) != list(range(self.target_cols)):
            raise ValueError("blocks must partition the target columns")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def consecutive(cls, sizes: Sequence[int]) -> "BlockMap":
        blocks, start = [], 0
        for s in sizes:
            blocks.append(tuple(range(start, start + s)))
            start += s
        return cls(start, tuple(blocks))

    def block_of(self) -> list[int]:
        owner = [0] * self.target_cols
        for b, cols in enumerate(self.blocks):
            for c in cols:
                owner[c] = b
        return owner

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def lift_by_cofinality(H: GridColoring, blocks: BlockMap) -> GridColoring:
    """Spread each source column over its block: ``(a, j)`` gets the class of ``(a, beta)`` for ``j`` in block ``beta``."""
    if not H.is_total():
        raise ValueError("source coloring must be total")
    if len(blocks.blocks) != H.cols:
        raise ValueError(f"need {H.cols} blocks, got {len(blocks.blocks)}")
    owner = blocks.block_of()
    return GridColoring.from_function(H.rows, blocks.target_cols, H.class_count,
                                      lambda r, c: H.table[r][owner[c]])


def lifted_nu(blocks: BlockMap, nu: int) -> int:
    """Column count that forces a hit in the lift of a (mu, nu)-thick class.

    Any column set larger than the ``nu - 1`` largest blocks together must
    touch ``nu`` distinct blocks.  Uniform blocks of size s give s*(nu-1)+1.
    """
    if nu <= 0:
        return 0
    sizes = sorted(blocks.sizes(), reverse=True)
    return sum(sizes[:nu - 1]) + 1


def assert_disjoint(coloring: GridColoring) -> None:
    seen = set()
    for cls in coloring.classes():
        if seen & cls.members:
            raise AssertionError("class cell sets overlap")
        seen |= cls.members
