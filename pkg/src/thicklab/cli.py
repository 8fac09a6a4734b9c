"""Command line entry point.

Exit codes: 0 pass or SAT, 1 fail or UNSAT, 2 usage error, 3 search budget
exhausted.  Reports are canonical JSON (tables are CSV) and embed the
configuration that produced them.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import breakers, corelemma, grid, ramsey, rationals, resolve, search
from .report import WitnessReport, dumps

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_grid(path: str) -> grid.GridColoring:
    data = _load(path)
    # assemble/scenario reports nest the coloring under artifacts
    if "artifacts" in data and "coloring" in data["artifacts"]:
        data = data["artifacts"]["coloring"]
    return grid.GridColoring.from_dict(data)


def _class_of(coloring: grid.GridColoring, k: int) -> grid.CellSet:
    if not 0 <= k < coloring.class_count:
        raise UsageError(f"class {k} not in 0..{coloring.class_count - 1}")
    return coloring.class_cells(k)


# -- thick -------------------------------------------------------------------

def cmd_thick_check(args) -> tuple[int, dict]:
    E = _class_of(_load_grid(args.grid), args.cls)
    rep = WitnessReport()
    w = grid.find_failing_rectangle(E, args.mu, args.nu)
    if w is not None:
        rep.fail("not-thick", witness=w.to_dict())
    rep.stats = {"cells": len(E), "rows": E.rows, "cols": E.cols}
    return _verdict(rep)


def cmd_thick_restrict(args) -> tuple[int, dict]:
    E = _class_of(_load_grid(args.grid), args.cls)
    sub = grid.restrict(E, _ints(args.rows), _ints(args.cols))
    rep = WitnessReport()
    w = grid.find_failing_rectangle(sub, args.mu, args.nu)
    if w is not None:
        rep.fail("not-thick", witness=w.to_dict())
    rep.artifacts["restricted"] = grid.cellset_coloring(sub).to_dict()
    return _verdict(rep)


def cmd_thick_lift(args) -> tuple[int, dict]:
    src = _load_grid(args.grid)
    bmap = grid.BlockMap.consecutive(_ints(args.blocks))
    lifted = grid.lift_by_cofinality(src, bmap)
    nu2 = grid.lifted_nu(bmap, args.nu)
    rep = WitnessReport()
    for k, cls in enumerate(src.classes()):
        if not grid.is_thick(cls, args.mu, args.nu):
            continue  # the lift promises nothing for a source class that fails
        w = grid.find_failing_rectangle(lifted.class_cells(k), args.mu, nu2)
        if w is not None:
            rep.fail("lift-not-thick", cls=k, nu=nu2, witness=w.to_dict())
    rep.artifacts["lifted"] = lifted.to_dict()
    rep.stats = {"liftedNu": nu2}
    return _verdict(rep)


# -- break -------------------------------------------------------------------

def cmd_break_kuratowski(args) -> tuple[int, dict]:
    fam = breakers.SubsetFamily.from_dict(_load(args.family))
    rep = WitnessReport()
    try:
        f = breakers.kuratowski_break(fam, args.range, reuse=args.reuse)
    except breakers.SelectionExhausted as exc:
        rep.fail("selection-exhausted", member=exc.member, value=exc.value)
        return _verdict(rep)
    for i, s in enumerate(fam.sets):
        if not f.covers(s, args.range):
            rep.fail("not-covered", member=i)
    rep.artifacts["function"] = f.to_dict()
    return _verdict(rep)


def cmd_break_split(args) -> tuple[int, dict]:
    fam = breakers.SubsetFamily.from_dict(_load(args.family))
    rep = WitnessReport()
    try:
        trace, f = breakers.split_family(fam, args.parts, seed=args.seed)
    except breakers.SplitterNotFound as exc:
        rep.fail("splitter-not-found", round=exc.round)
        return _verdict(rep)
    rep.artifacts["trace"] = trace.to_dict()
    rep.artifacts["function"] = f.to_dict()
    return _verdict(rep)


# -- corelemma ---------------------------------------------------------------

def _family(args) -> corelemma.FamilyEnumeration:
    if args.sample:
        return corelemma.FamilyEnumeration.sampled(args.m, args.mu, args.sample, args.seed)
    return corelemma.FamilyEnumeration.all_subsets(args.m, args.mu)


def cmd_corelemma_assemble(args) -> tuple[int, dict]:
    fam = _family(args)
    th = _ints(args.thresholds) or None
    rep = WitnessReport()
    try:
        if args.variant == corelemma.TAU:
            coloring, schedule = corelemma.assemble_tau(fam, args.l, args.tau, th, breaker=args.breaker)
        else:
            coloring, schedule = corelemma.assemble_lambda(fam, args.l, th)
    except breakers.SelectionExhausted as exc:
        rep.fail("selection-exhausted", column=exc.column, member=exc.member, value=exc.value)
        return _verdict(rep)
    except breakers.SplitterNotFound as exc:
        rep.fail("splitter-not-found", round=exc.round, context=exc.context)
        return _verdict(rep)
    rep = corelemma.audit_assembly(coloring, fam, schedule, args.variant)
    if args.variant == corelemma.TAU and fam.mode == "all":
        corelemma.full_thickness(coloring, args.mu, args.l, rep)
    rep.artifacts.update(coloring=coloring.to_dict(), schedule=schedule.to_dict(), family=fam.to_dict())
    return _verdict(rep)


def cmd_corelemma_audit(args) -> tuple[int, dict]:
    data = _load(args.assembly)
    art = data.get("artifacts", data)
    coloring = grid.GridColoring.from_dict(art["coloring"])
    fam = corelemma.FamilyEnumeration.from_dict(art["family"])
    schedule = corelemma.BreakSchedule.from_dict(art["schedule"], coloring.class_count)
    rep = corelemma.audit_assembly(coloring, fam, schedule, args.variant)
    return _verdict(rep)


def cmd_corelemma_scenario(args) -> tuple[int, dict]:
    rep = WitnessReport()
    try:
        _, rep = corelemma.run_scenario(args.name, m=args.m, l=args.l, mu=args.mu, tau=args.tau,
                                        rows=args.rows, blocks=_ints(args.blocks) or None, seed=args.seed)
    except breakers.SelectionExhausted as exc:
        rep.fail("selection-exhausted", column=exc.column, member=exc.member, value=exc.value)
    except breakers.SplitterNotFound as exc:
        rep.fail("splitter-not-found", round=exc.round, context=exc.context)
    return _verdict(rep)


# -- ramsey ------------------------------------------------------------------

def cmd_ramsey_extract(args) -> tuple[int, dict]:
    f = ramsey.pair_coloring(args.oracle, args.m, args.colors)
    A, k = ramsey.ramsey_extract(f)
    rep = WitnessReport()
    rep.artifacts = {"set": list(A), "color": k}
    rep.stats = {"size": len(A), "guarantee": ramsey.size_guarantee(args.m, f.colors)}
    return _verdict(rep)


def cmd_ramsey_witness(args) -> tuple[int, dict]:
    h = ramsey.grid_oracle(args.oracle, args.m, 3)
    rep = WitnessReport()
    try:
        w = ramsey.anti_thick_witness(h)
    except ramsey.DegenerateWitness as exc:
        rep.fail("degenerate", reason=str(exc))
        return _verdict(rep)
    rep.artifacts = w.to_dict()
    return _verdict(rep)


# -- search ------------------------------------------------------------------

def cmd_search_solve(args) -> tuple[int, dict]:
    out = search.solve(search.SearchProblem(args.m, args.mu, args.nu, args.p), args.budget)
    code = {search.SAT: EXIT_PASS, search.UNSAT: EXIT_FAIL, search.BUDGET: EXIT_BUDGET}[out.status]
    return code, out.to_dict()


def cmd_search_table(args) -> tuple[int, str]:
    rng = tuple(_ints(args.range)) or None
    rows = search.thick_number_table(args.m_max, rng, args.budget)
    code = EXIT_BUDGET if any(r.status != "exact" for r in rows) else EXIT_PASS
    if search.monotonicity_violations(rows):
        code = EXIT_FAIL
    return code, search.table_csv(rows)


def cmd_search_verify(args) -> tuple[int, dict]:
    rep = search.verify_certificate(_load_grid(args.grid), search.SearchProblem(args.m, args.mu, args.nu, args.p))
    return _verdict(rep)


# -- resolve -----------------------------------------------------------------

def _boxes(args) -> list:
    arity = 2 if args.mode == "ktree" else args.arity
    if args.boxes == "default":
        return resolve.random_boxes(args.count, args.seed, arity)
    boxes = [resolve.box_from_list(b) for b in _load(args.boxes)]
    if any(len(b) != arity for b in boxes):
        raise UsageError(f"boxes must have {arity} sides")
    if any(lo >= hi for b in boxes for lo, hi in b):
        raise UsageError("boxes need nonempty interiors")
    return boxes


def cmd_resolve(args) -> tuple[int, dict]:
    """Density misses are data: they go to ``artifacts``; only broken K-conditions fail."""
    boxes = _boxes(args)
    rep = WitnessReport()
    if args.mode == "ordertype":
        audit = resolve.density_audit_ordertype(boxes, args.arity, args.points)
    else:
        ka = resolve.build_k_assignment(args.points)
        rep.violations = resolve.verify_k_conditions(ka).violations
        rt = resolve.rank_table(ka)
        k = args.classes
        sel = rationals.default_selector if args.selector == "pairing" else (lambda r: r % k)
        audit = resolve.density_audit_ktree(ka, rt, boxes, k, sel)
        horizons = sorted({max(1, args.points >> s) for s in range(4)})
        rep.artifacts["maxRankPerBox"] = resolve.max_rank_per_box(ka, rt, boxes, horizons)
        rep.stats.update(maxRank=max(rt.rank), horizons=horizons, selector=args.selector)
    rep.artifacts["boxes"] = audit.artifacts["boxes"]
    rep.artifacts["misses"] = audit.violations
    rep.stats.update(audit.stats, allHit=audit.passed)
    return _verdict(rep)


# -- plumbing ----------------------------------------------------------------

def _verdict(rep: WitnessReport) -> tuple[int, dict]:
    return (EXIT_PASS if rep.passed else EXIT_FAIL), rep.to_dict()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thicklab", description="Thick partitions of finite grids and rational planes.")
    groups = p.add_subparsers(dest="group", required=True)

    def sub(parent, name, func, **kw):
        sp = parent.add_parser(name, **kw)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the report here instead of stdout")
        return sp

    def mu_nu(sp):
        sp.add_argument("--mu", type=int, required=True)
        sp.add_argument("--nu", type=int, required=True)

    thick = groups.add_parser("thick").add_subparsers(dest="action", required=True)
    sp = sub(thick, "check", cmd_thick_check)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--class", dest="cls", type=int, default=0)
    mu_nu(sp)
    sp = sub(thick, "restrict", cmd_thick_restrict)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--class", dest="cls", type=int, default=0)
    sp.add_argument("--rows", required=True, help="comma-separated row indices")
    sp.add_argument("--cols", required=True, help="comma-separated column indices")
    mu_nu(sp)
    sp = sub(thick, "lift", cmd_thick_lift)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--blocks", required=True, help="comma-separated block sizes")
    mu_nu(sp)

    brk = groups.add_parser("break").add_subparsers(dest="action", required=True)
    sp = sub(brk, "kuratowski", cmd_break_kuratowski)
    sp.add_argument("--family", required=True)
    sp.add_argument("--range", type=int, required=True)
    sp.add_argument("--reuse", action="store_true")
    sp = sub(brk, "split", cmd_break_split)
    sp.add_argument("--family", required=True)
    sp.add_argument("--parts", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)

    core = groups.add_parser("corelemma").add_subparsers(dest="action", required=True)
    sp = sub(core, "assemble", cmd_corelemma_assemble)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--tau", type=int, default=2)
    sp.add_argument("--variant", choices=[corelemma.TAU, corelemma.LAMBDA], default=corelemma.TAU)
    sp.add_argument("--breaker", choices=["diagonal", "kuratowski", "split"], default="diagonal")
    sp.add_argument("--thresholds", default="")
    sp.add_argument("--sample", type=int, default=0, help="draw this many subsets instead of all")
    sp.add_argument("--seed", type=int, default=0)
    sp = sub(core, "audit", cmd_corelemma_audit)
    sp.add_argument("--assembly", required=True, help="report written by corelemma assemble")
    sp.add_argument("--variant", choices=[corelemma.TAU, corelemma.LAMBDA], default=corelemma.TAU)
    sp = sub(core, "scenario", cmd_corelemma_scenario)
    sp.add_argument("--name", choices=corelemma.SCENARIOS, required=True)
    sp.add_argument("--m", type=int, default=4)
    sp.add_argument("--l", type=int)
    sp.add_argument("--mu", type=int, default=3)
    sp.add_argument("--tau", type=int, default=3)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--blocks", default="")
    sp.add_argument("--seed", type=int, default=0)

    rams = groups.add_parser("ramsey").add_subparsers(dest="action", required=True)
    sp = sub(rams, "extract", cmd_ramsey_extract)
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--colors", type=int, default=2)
    sp = sub(rams, "witness", cmd_ramsey_witness)
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--m", type=int, required=True)

    srch = groups.add_parser("search").add_subparsers(dest="action", required=True)
    for name, func in (("solve", cmd_search_solve), ("verify", cmd_search_verify)):
        sp = sub(srch, name, func)
        sp.add_argument("--m", type=int, required=True)
        mu_nu(sp)
        sp.add_argument("--p", type=int, required=True)
        if name == "solve":
            sp.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
        else:
            sp.add_argument("--grid", required=True)
    sp = sub(srch, "table", cmd_search_table)
    sp.add_argument("--m-max", type=int, default=4)
    sp.add_argument("--range", default="", help="lo,hi bounds for mu and nu")
    sp.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)

    sp = sub(groups, "resolve", cmd_resolve)
    sp.add_argument("--mode", choices=["ktree", "ordertype"], default="ktree")
    sp.add_argument("--arity", type=int, default=2)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--classes", type=int, default=4)
    sp.add_argument("--boxes", default="default", help="'default' or a JSON file of boxes")
    sp.add_argument("--count", type=int, default=20, help="number of default boxes")
    sp.add_argument("--selector", choices=["pairing", "mod"], default="pairing")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad usage
    try:
        code, body = args.func(args)
    except (UsageError, ValueError, IndexError, KeyError, OSError) as exc:
        print(f"thicklab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(body, str):
        text = body
    else:
        text = dumps({"config": _config(args), **body})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
