"""Solvers for the parametric one-interdiction problem.

Two exact routes to the optimal interdiction value function:

* :func:`solve_naive` sweeps all crossings once, maintaining the optimal
  basis plus one deleted-element optimum per basis member (every other
  deleted-element optimum coincides with the undeleted one), and takes the
  upper envelope of the resulting per-element value functions.
* :func:`solve_intervals` first narrows the crossings down to a small
  candidate set (rank growth or singleton-component absorption in growing
  restrictions), then solves each candidate window independently from the
  basis and its replacement elements, and stitches the windows together.

Both refuse instances with coloops: interdicting such an element makes the
objective infinite, so the problem degenerates.  :func:`doubled_instance`
adds a parallel twin per element, which forces the interdicted optimum to
collapse onto the plain optimum -- a handy self-test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matroid import ColoopError, DoubledMatroid, GraphicMatroid, MatroidView
from .parametric import (
    MatroidInstance,
    advance_min_basis,
    all_equality_points,
    group_by_lambda,
)
from .pwl import (
    EqualityPoint,
    LinearFn,
    PWLFunction,
    envelope_of_lines,
    envelope_of_pwl,
    equality_point,
)
from .rationals import ParamInterval, extended, interior_point
from .solution import Solution, build_solution

_FOLLOWS_MAIN = None  # sentinel line meaning "this element tracks the optimum"


def _checked_view(inst: MatroidInstance) -> MatroidView:
    view = inst.view()
    coloops = view.coloop_scan()
    if coloops:
        raise ColoopError(coloops)
    if view.rank() == 0:
        raise ValueError("rank-0 instance: there is nothing to interdict")
    return view


def removal_value_functions(inst: MatroidInstance) -> dict[int, PWLFunction]:
    """For every element, the optimum of the instance with it removed.

    One sweep over all crossings maintains the optimal basis and the deleted
    optima of its members; at a lone crossing e->f at most rank+1 swap tests
    run (one per maintained basis containing e but not f).  Elements outside
    the optimal basis share the undeleted optimum, so their functions are the
    plain value function itself.
    """
    view = _checked_view(inst)
    interval = inst.interval
    points = all_equality_points(inst)
    groups = group_by_lambda(points)

    if groups:
        start_rep = interior_point(interval.lo, extended(groups[0][0]))
    else:
        start_rep = interval.representative()
    weight_at = inst.weights_at(start_rep)

    basis = view.greedy_min_basis(weight_at)
    deleted_views = {g: view.delete(g) for g in basis}
    deleted_bases = {g: deleted_views[g].greedy_min_basis(weight_at) for g in basis}

    main_line = inst.basis_line(basis)
    main_transitions: list[tuple[Fraction | None, LinearFn]] = [(None, main_line)]
    own_transitions: dict[int, list[tuple[Fraction | None, LinearFn | None]]] = {
        e: [(None, inst.basis_line(deleted_bases[e]) if e in basis else _FOLLOWS_MAIN)]
        for e in range(inst.m)
    }

    def record_own(e: int, lam: Fraction, line: LinearFn | None):
        own_transitions[e].append((lam, line))

    for idx, (lam, group) in enumerate(groups):
        right_end = (
            extended(groups[idx + 1][0]) if idx + 1 < len(groups) else interval.hi
        )
        right_rep = interior_point(extended(lam), right_end)
        if len(group) == 1:
            pt = group[0]
            e, f = pt.lighter_before, pt.lighter_after
            swapped_members = []
            for g, basis_g in deleted_bases.items():
                if g == f or e not in basis_g or f in basis_g:
                    continue
                candidate = [x for x in basis_g if x != e] + [f]
                if deleted_views[g].is_independent(candidate):
                    swapped_members.append((g, frozenset(candidate)))
            new_basis, records = advance_min_basis(
                view, basis, group, right_rep, inst.weights_at, inst.weights
            )
            for g, swapped in swapped_members:
                deleted_bases[g] = swapped
                record_own(g, lam, inst.basis_line(swapped))
            if records:
                old_basis = basis
                basis = new_basis
                main_line = inst.basis_line(basis)
                main_transitions.append((lam, main_line))
                # e leaves: its deleted optimum now coincides with the plain
                # optimum; f enters: its deleted optimum is the old basis.
                del deleted_bases[e]
                del deleted_views[e]
                record_own(e, lam, _FOLLOWS_MAIN)
                deleted_views[f] = view.delete(f)
                deleted_bases[f] = old_basis
                record_own(f, lam, inst.basis_line(old_basis))
        else:
            # A coincident bundle: recompute every maintained optimum from
            # scratch just right of it.  Provably correct and only as slow as
            # the instance is degenerate.
            weight_right = inst.weights_at(right_rep)
            new_basis = view.greedy_min_basis(weight_right)
            if new_basis != basis:
                main_line = inst.basis_line(new_basis)
                main_transitions.append((lam, main_line))
            for g in sorted(basis - new_basis):
                del deleted_bases[g]
                del deleted_views[g]
                record_own(g, lam, _FOLLOWS_MAIN)
            for g in sorted(new_basis - basis):
                deleted_views[g] = view.delete(g)
                deleted_bases[g] = deleted_views[g].greedy_min_basis(weight_right)
                record_own(g, lam, inst.basis_line(deleted_bases[g]))
            for g in sorted(basis & new_basis):
                refreshed = deleted_views[g].greedy_min_basis(weight_right)
                old_line = inst.basis_line(deleted_bases[g])
                new_line = inst.basis_line(refreshed)
                deleted_bases[g] = refreshed
                if new_line != old_line:
                    record_own(g, lam, new_line)
            basis = new_basis

    main_fn = _assemble(interval, main_transitions, None)
    out: dict[int, PWLFunction] = {}
    for e in range(inst.m):
        transitions = own_transitions[e]
        if all(line is _FOLLOWS_MAIN for _, line in transitions):
            out[e] = main_fn
        else:
            out[e] = _assemble(interval, transitions, main_transitions)
    return out


def _assemble(
    interval: ParamInterval,
    transitions: Sequence[tuple[Fraction | None, LinearFn | None]],
    main_transitions: Sequence[tuple[Fraction | None, LinearFn]] | None,
) -> PWLFunction:
    """Splice explicit line spans with spans that track the main optimum."""
    cuts: list[Fraction] = []
    pieces: list[LinearFn] = []

    def emit(start: Fraction | None, line: LinearFn):
        if pieces:
            assert start is not None
            cuts.append(start)
        pieces.append(line)

    spans = list(transitions)
    for i, (start, line) in enumerate(spans):
        end = spans[i + 1][0] if i + 1 < len(spans) else None
        if line is not _FOLLOWS_MAIN:
            emit(start, line)
            continue
        assert main_transitions is not None
        start_ext = interval.lo if start is None else extended(start)
        end_ext = interval.hi if end is None else extended(end)
        first_in_span = True
        for j, (mstart, mline) in enumerate(main_transitions):
            mend = (
                extended(main_transitions[j + 1][0])
                if j + 1 < len(main_transitions)
                else interval.hi
            )
            mstart_ext = interval.lo if mstart is None else extended(mstart)
            if mend <= start_ext or mstart_ext >= end_ext:
                continue
            if first_in_span:
                emit(start, mline)
                first_in_span = False
            else:
                assert mstart is not None
                emit(mstart, mline)
    return PWLFunction.build(interval, cuts, pieces)


def solve_naive(inst: MatroidInstance) -> Solution:
    """Upper envelope of all removal value functions."""
    removal = removal_value_functions(inst)
    # Many elements share the plain optimum object; feed each distinct
    # function once with its smallest owning label.
    by_identity: dict[int, tuple[int, PWLFunction]] = {}
    for e in range(inst.m):
        fn = removal[e]
        key = id(fn)
        if key not in by_identity or e < by_identity[key][0]:
            by_identity[key] = (e, fn)
    labeled = envelope_of_pwl(
        sorted(by_identity.values(), key=lambda pair: pair[0]), inst.interval
    )
    return build_solution(inst, labeled)


@dataclass(frozen=True)
class CandidateEntry:
    """A crossing kept as a potential slope change, with the reasons why."""

    point: EqualityPoint
    by_rank: bool
    by_singleton: bool

    @property
    def tags(self) -> str:
        names = []
        if self.by_rank:
            names.append("rank")
        if self.by_singleton:
            names.append("singleton")
        return "+".join(names)


@dataclass(frozen=True)
class CandidateSet:
    """Sound superset of every slope change of the value functions."""

    entries: tuple[CandidateEntry, ...]

    @property
    def points(self) -> tuple[EqualityPoint, ...]:
        return tuple(entry.point for entry in self.entries)

    def lambdas(self) -> list[Fraction]:
        return sorted({entry.point.lam for entry in self.entries})

    def __len__(self) -> int:
        return len(self.entries)


def find_candidates(inst: MatroidInstance) -> CandidateSet:
    """Filter the crossings down to at most ``2 * rank * m`` candidates.

    For each element ``e`` the sweep grows the set of elements that are both
    cheaper than ``e`` and past their crossing with it.  A crossing e->f is
    kept when inserting ``f`` either extends a maximal independent set of
    that restriction (rank case) or merges a singleton component into ``f``'s
    component (singleton case); every slope change of the plain or any
    removal value function happens at a kept crossing.

    Components are recomputed per insertion (2-connected components for
    graphic backends, fundamental circuits otherwise); the amortized
    incremental structures this trades away are documented in the README.
    """
    view = inst.view()
    m = inst.m
    crossing: dict[tuple[int, int], Fraction | None] = {}
    in_window: list[EqualityPoint] = []
    for i in range(m):
        for j in range(i + 1, m):
            pt = equality_point(i, inst.weights[i], j, inst.weights[j])
            crossing[(i, j)] = pt.lam if pt is not None else None
            crossing[(j, i)] = pt.lam if pt is not None else None
            if pt is not None and inst.interval.strictly_inside(pt.lam):
                in_window.append(pt)
    in_window.sort(key=lambda p: (p.lam, p.lighter_before, p.lighter_after))

    if in_window:
        start_rep = interior_point(inst.interval.lo, extended(in_window[0].lam))
    else:
        start_rep = inst.interval.representative()
    weight_at = inst.weights_at(start_rep)

    active: list[set[int]] = []
    bases: list[set[int]] = []
    comps = []
    for e in range(m):
        grown = {
            f
            for f in range(m)
            if f != e
            and weight_at(f) < weight_at(e)
            and (crossing[(e, f)] is None or crossing[(e, f)] < start_rep)
        }
        active.append(grown)
        builder = inst.backend.builder()
        bases.append({f for f in sorted(grown) if builder.add(f)})
        comps.append(view.restrict(grown).components())

    entries: list[CandidateEntry] = []
    for pt in in_window:
        e, f = pt.lighter_before, pt.lighter_after
        by_rank = view.is_independent(bases[e] | {f})
        if by_rank:
            bases[e].add(f)
        before = comps[e]
        active[e].add(f)
        after = view.restrict(active[e]).components()
        comps[e] = after
        merged = after.members[after.component_of(f)]
        by_singleton = any(
            g != f and g in before.comp_of and before.is_singleton(g) for g in merged
        )
        if by_rank or by_singleton:
            entries.append(CandidateEntry(pt, by_rank, by_singleton))
    return CandidateSet(tuple(entries))


def solve_intervals(inst: MatroidInstance) -> Solution:
    """Solve each window between candidate crossings, then stitch.

    Inside a window the optimal basis is fixed, so each basis member's
    removal optimum is one line: basis minus member plus its replacement
    element.  The window's interdicted optimum is the upper envelope of those
    rank-many lines; only basis members can be most vital.
    """
    view = _checked_view(inst)
    candidates = find_candidates(inst)
    lambdas = candidates.lambdas()
    # Advance across a candidate value with every crossing that shares it:
    # under heavy ties the pair that actually swaps the basis need not be the
    # flagged candidate from the same bundle.
    candidate_values = set(lambdas)
    points_at: dict[Fraction, list[EqualityPoint]] = {}
    for pt in all_equality_points(inst):
        if pt.lam in candidate_values:
            points_at.setdefault(pt.lam, []).append(pt)

    bounds = [inst.interval.lo] + [extended(l) for l in lambdas] + [inst.interval.hi]
    windows = [
        ParamInterval(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)
    ]

    basis = view.greedy_min_basis(inst.weights_at(windows[0].representative()))
    cuts: list[Fraction] = []
    pieces: list[LinearFn] = []
    labels: list[int] = []
    for i, window in enumerate(windows):
        if i > 0:
            lam = lambdas[i - 1]
            basis, _ = advance_min_basis(
                view,
                basis,
                points_at[lam],
                window.representative(),
                inst.weights_at,
                inst.weights,
            )
        rep = window.representative()
        weight_at = inst.weights_at(rep)
        lines = []
        for e in sorted(basis):
            replacement = view.replacement_element(basis, e, weight_at)
            assert replacement is not None
            lines.append(
                (
                    e,
                    inst.basis_line(basis)
                    - inst.weight_fn(e)
                    + inst.weight_fn(replacement),
                )
            )
        local = envelope_of_lines(lines, window)
        for j, piece in enumerate(local.pieces):
            if pieces:
                cuts.append(local.cuts[j - 1] if j > 0 else lambdas[i - 1])
            pieces.append(piece)
            assert local.labels is not None
            labels.append(local.labels[j])

    stitched = PWLFunction.build(inst.interval, cuts, pieces, labels)
    return build_solution(inst, stitched)


def doubled_instance(inst: MatroidInstance) -> MatroidInstance:
    """Give every element a parallel twin with the identical weight line.

    Removing any element of the doubled instance is repaired for free by its
    twin, so the interdicted optimum of the double equals the plain optimum
    of the original.
    """
    backend = DoubledMatroid(inst.backend)
    weights = inst.weights + inst.weights
    name = f"{inst.name}-doubled" if inst.name else "doubled"
    return MatroidInstance(backend, weights, inst.interval, name)


def doubled_graphic_instance(inst: MatroidInstance) -> MatroidInstance:
    """The doubling of a graphic instance as a plain multigraph.

    Same construction realized with parallel edges instead of the twin
    backend; both routes must produce interchangeable value functions.
    """
    if not isinstance(inst.backend, GraphicMatroid):
        raise TypeError("parallel-copy doubling requires a graphic backend")
    backend = GraphicMatroid(
        inst.backend.node_count, inst.backend.edges + inst.backend.edges
    )
    weights = inst.weights + inst.weights
    name = f"{inst.name}-doubled" if inst.name else "doubled"
    return MatroidInstance(backend, weights, inst.interval, name)
