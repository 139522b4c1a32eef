"""Command-line front end.

Verbs:

* ``solve``      -- write the segment list and stats for one instance file
* ``check``      -- run all solvers and every structural self-check
* ``plot``       -- sample the value functions into a CSV
* ``double``     -- emit the parallel-twin double of an instance
* ``candidates`` -- list the candidate crossings with their case tags

Exit codes: 0 success, 1 input error, 2 assumption violation (coloops
present), 3 a check failed.  Output files are byte-identical across runs on
the same input; there is no timestamping and no parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .instances import (
    InstanceFormatError,
    dump_instance,
    dump_solution,
    load_instance,
    read_dimacs,
)
from .interdiction import (
    doubled_graphic_instance,
    doubled_instance,
    find_candidates,
    removal_value_functions,
    solve_intervals,
    solve_naive,
)
from .matroid import ColoopError, GraphicMatroid
from .oracle import compare, interdict_at, solve_bruteforce
from .parametric import MatroidInstance, all_equality_points, parametric_min_basis
from .pwl import pwl_equal
from .rationals import ParamInterval, extended, format_rational

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_COLOOPS = 2
EXIT_CHECK_FAILED = 3

_SOLVERS = {
    "naive": solve_naive,
    "intervals": solve_intervals,
    "oracle": solve_bruteforce,
}


def _load(args) -> MatroidInstance:
    path = args.infile
    fmt = getattr(args, "format", "auto")
    if fmt == "auto":
        fmt = "dimacs" if path.endswith((".dimacs", ".col")) else "json"
    if fmt == "dimacs":
        lo, _, hi = getattr(args, "interval", "-10:10").partition(":")
        window = ParamInterval(extended(lo.strip()), extended(hi.strip()))
        with open(path, "r", encoding="utf-8") as handle:
            inst = read_dimacs(handle.read(), window, name=path.rsplit("/", 1)[-1])
    else:
        inst = load_instance(path)
    backend = inst.backend
    if isinstance(backend, GraphicMatroid) and backend.self_loops():
        loops = ", ".join(f"e{e}" for e in backend.self_loops())
        print(f"note: self-loop edges present: {loops}", file=sys.stderr)
    return inst


def _stats(inst: MatroidInstance, sol) -> dict:
    k = inst.rank()
    schedule = parametric_min_basis(inst)
    candidates = find_candidates(inst)
    per_window_ok = _interdiction_counts_ok(sol, candidates.lambdas(), k)
    return {
        "m": inst.m,
        "k": k,
        "equality_points": len(all_equality_points(inst)),
        "candidates": len(candidates),
        "breakpoints_of_w": len(schedule.value.cuts),
        "changepoints_of_y": len(sol.value.cuts),
        "bound_2km": 2 * k * inst.m,
        "bound_mk2_intervals_ok": per_window_ok,
    }


def _interdiction_counts_ok(sol, lambdas, k) -> bool:
    for i in range(len(lambdas) + 1):
        lo = lambdas[i - 1] if i > 0 else None
        hi = lambdas[i] if i < len(lambdas) else None
        inside = [
            c
            for c in sol.value.cuts
            if (lo is None or c > lo) and (hi is None or c < hi)
        ]
        if len(inside) > k - 1:
            return False
    return True


def cmd_solve(args) -> int:
    inst = _load(args)
    solution = _SOLVERS[args.algorithm](inst)
    payload = dump_solution(inst, solution, _stats(inst, solution))
    with open(args.outfile, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    print(f"wrote {args.outfile}: {len(solution.segments)} segment(s)")
    return EXIT_OK


def _run_checks(inst: MatroidInstance) -> list[tuple[str, bool, str]]:
    naive = solve_naive(inst)
    intervals = solve_intervals(inst)
    brute = solve_bruteforce(inst)
    k = inst.rank()
    checks: list[tuple[str, bool, str]] = []

    for name, left, right in (
        ("naive vs intervals", naive, intervals),
        ("naive vs oracle", naive, brute),
        ("intervals vs oracle", intervals, brute),
    ):
        report = compare(left, right, samples=64)
        detail = ""
        if report.first_divergence:
            lam, lhs, rhs = report.first_divergence
            detail = f"first divergence at {lam}: {lhs} vs {rhs}"
        checks.append((f"solver agreement: {name}", report.ok, detail))

    candidates = find_candidates(inst)
    bound = 2 * k * inst.m
    checks.append(
        (
            "candidate count within 2km bound",
            len(candidates) <= bound,
            f"{len(candidates)} candidates vs bound {bound}",
        )
    )

    schedule = parametric_min_basis(inst)
    removal = removal_value_functions(inst)
    lambdas = candidates.lambdas()
    candidate_set = set(lambdas)
    missing = [c for c in schedule.value.cuts if c not in candidate_set]
    for fn in removal.values():
        missing += [c for c in fn.cuts if c not in candidate_set]
    checks.append(
        (
            "candidates cover every slope change",
            not missing,
            f"uncovered: {missing[0]}" if missing else "",
        )
    )

    window_ok = _interdiction_counts_ok(naive, lambdas, k)
    window_detail = ""
    if not window_ok:
        for lo, hi in zip([None] + lambdas, lambdas + [None]):
            inside = [
                c
                for c in naive.value.cuts
                if (lo is None or c > lo) and (hi is None or c < hi)
            ]
            if len(inside) > k - 1:
                window_detail = f"{len(inside)} slope changes after {inside[0]}"
                break
    checks.append(("per-window slope changes at most k-1", window_ok, window_detail))

    slopes = [p.b for p in schedule.value.pieces]
    concave = all(nxt < prev for prev, nxt in zip(slopes, slopes[1:]))
    concave_detail = "" if concave else next(
        f"slope does not drop at {cut}"
        for cut, prev, nxt in zip(schedule.value.cuts, slopes, slopes[1:])
        if nxt >= prev
    )
    checks.append(("optimal value function concave", concave, concave_detail))

    vital_ok = True
    detail = ""
    for seg in naive.segments:
        rep = seg.window.representative()
        if seg.most_vital not in seg.basis:
            vital_ok, detail = False, f"at {rep}: e{seg.most_vital} not in basis"
            break
        value, _ = interdict_at(inst, rep)
        if value != naive.value_at(rep):
            vital_ok, detail = False, f"at {rep}: {value} vs {naive.value_at(rep)}"
            break
    checks.append(("most vital element lies in the optimal basis", vital_ok, detail))

    swap_ok = True
    detail = ""
    for cut, (out, in_) in zip(schedule.cuts, schedule.swaps):
        if removal[out].value_at(cut) != removal[in_].value_at(cut):
            swap_ok = False
            detail = f"at {cut}: e{out} vs e{in_}"
            break
    checks.append(("swap partners agree at every breakpoint", swap_ok, detail))

    doubled = solve_naive(doubled_instance(inst))
    doubled_ok = pwl_equal(doubled.value, schedule.value)
    doubled_detail = ""
    if not doubled_ok:
        for lam in list(doubled.value.cuts) + list(schedule.value.cuts):
            if doubled.value.value_at(lam) != schedule.value.value_at(lam):
                doubled_detail = f"values differ at {lam}"
                break
    checks.append(
        (
            "doubled instance reproduces the optimal value function",
            doubled_ok,
            doubled_detail,
        )
    )
    return checks


def cmd_check(args) -> int:
    inst = _load(args)
    checks = _run_checks(inst)
    width = max(len(name) for name, _, _ in checks)
    for name, ok, detail in checks:
        state = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail and not ok else ""
        print(f"{name.ljust(width)}  {state}{suffix}")
    if any(not ok for _, ok, _ in checks):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_plot(args) -> int:
    inst = _load(args)
    if not inst.interval.is_bounded:
        print("error: plotting needs a bounded interval", file=sys.stderr)
        return EXIT_INPUT
    solution = _SOLVERS[args.algorithm](inst)
    schedule = parametric_min_basis(inst)
    lo, hi = inst.interval.lo.value, inst.interval.hi.value
    samples = [lo + Fraction(i * (hi - lo), args.samples) for i in range(args.samples + 1)]
    rows = sorted(list(solution.value.cuts) + samples)
    with open(args.outfile, "w", encoding="utf-8") as handle:
        handle.write("lambda,y,w,most_vital,y_decimal\n")
        for lam in rows:
            y = solution.value_at(lam)
            w = schedule.value.value_at(lam)
            vital = solution.most_vital_at(lam)
            decimal = f"{float(y):.12f}"
            handle.write(
                f"{format_rational(lam)},{format_rational(y)},"
                f"{format_rational(w)},e{vital},{decimal}\n"
            )
    print(f"wrote {args.outfile}: {len(rows)} row(s)")
    return EXIT_OK


def cmd_double(args) -> int:
    inst = _load(args)
    if isinstance(inst.backend, GraphicMatroid):
        doubled = doubled_graphic_instance(inst)
    else:
        doubled = doubled_instance(inst)
    with open(args.outfile, "w", encoding="utf-8") as handle:
        json.dump(dump_instance(doubled), handle, indent=2)
        handle.write("\n")
    print(f"wrote {args.outfile}: {doubled.m} element(s)")
    return EXIT_OK


def cmd_candidates(args) -> int:
    inst = _load(args)
    candidates = find_candidates(inst)
    print("lambda\tcrossing\tcases")
    for entry in candidates.entries:
        pt = entry.point
        print(
            f"{format_rational(pt.lam)}\t"
            f"e{pt.lighter_before}->e{pt.lighter_after}\t{entry.tags}"
        )
    print(f"total: {len(candidates)} (bound 2km = {2 * inst.rank() * inst.m})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matroid-interdiction",
        description="Exact parametric one-interdiction solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--in", dest="infile", required=True, help="instance file")
        p.add_argument(
            "--format", choices=("auto", "json", "dimacs"), default="auto"
        )
        p.add_argument(
            "--interval",
            default="-10:10",
            help="parameter interval LO:HI for DIMACS inputs",
        )

    p_solve = sub.add_parser("solve", help="solve one instance")
    add_common(p_solve)
    p_solve.add_argument(
        "--algorithm", choices=sorted(_SOLVERS), default="naive"
    )
    p_solve.add_argument("--out", dest="outfile", required=True)
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="run all solvers and self-checks")
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_plot = sub.add_parser("plot", help="sample the value functions to CSV")
    add_common(p_plot)
    p_plot.add_argument("--algorithm", choices=sorted(_SOLVERS), default="naive")
    p_plot.add_argument("--samples", type=int, default=16)
    p_plot.add_argument("--out", dest="outfile", required=True)
    p_plot.set_defaults(func=cmd_plot)

    p_double = sub.add_parser("double", help="emit the parallel-twin double")
    add_common(p_double)
    p_double.add_argument("--out", dest="outfile", required=True)
    p_double.set_defaults(func=cmd_double)

    p_cand = sub.add_parser("candidates", help="list candidate crossings")
    add_common(p_cand)
    p_cand.set_defaults(func=cmd_candidates)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ColoopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COLOOPS
    except (InstanceFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():  # console-script entry point
    raise SystemExit(main())
