"""Brute-force reference solver and solution comparator.

This module is the trust anchor: it never touches the sweep machinery in
:mod:`.interdiction` (only the matroid oracle and the envelope primitives),
and it deliberately considers every element as an interdiction target in
every window instead of exploiting the fact that only basis members matter.
A disagreement with the fast solvers therefore localizes bugs in whichever
structural shortcut they rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .matroid import ColoopError
from .parametric import MatroidInstance
from .pwl import envelope_of_lines, equality_point, pwl_equal, PWLFunction
from .rationals import ParamInterval, extended
from .solution import Solution, build_solution


def _checked_view(inst: MatroidInstance):
    view = inst.view()
    coloops = view.coloop_scan()
    if coloops:
        raise ColoopError(coloops)
    if view.rank() == 0:
        raise ValueError("rank-0 instance: there is nothing to interdict")
    return view


def interdict_at(inst: MatroidInstance, lam: Fraction) -> tuple[Fraction, int]:
    """Best single removal at one parameter value, by exhaustive re-solving.

    Runs a fresh greedy optimum on every deleted instance; ties go to the
    smallest element id.  Shares no state with the sweep solvers.
    """
    if not inst.interval.contains(lam):
        raise ValueError(f"{lam} outside {inst.interval}")
    view = _checked_view(inst)
    weight_at = inst.weights_at(lam)
    best_value: Fraction | None = None
    best_element = -1
    for e in range(inst.m):
        basis = view.delete(e).greedy_min_basis(weight_at)
        value = sum(weight_at(x) for x in basis)
        if best_value is None or value > best_value:
            best_value = value
            best_element = e
    assert best_value is not None
    return best_value, best_element


def solve_bruteforce(inst: MatroidInstance) -> Solution:
    """Reference solution via per-window envelopes over all removals.

    Between two consecutive crossings no weight order changes, so each
    removal optimum is a single line there; the line is recovered from a
    fresh greedy run at the window's interior point.  The window envelope
    ranges over all elements, not just basis members.
    """
    view = _checked_view(inst)
    crossings = sorted(
        {
            pt.lam
            for i, j in combinations(range(inst.m), 2)
            for pt in (equality_point(i, inst.weights[i], j, inst.weights[j]),)
            if pt is not None and inst.interval.strictly_inside(pt.lam)
        }
    )
    bounds = (
        [inst.interval.lo] + [extended(l) for l in crossings] + [inst.interval.hi]
    )

    cuts: list[Fraction] = []
    pieces = []
    labels: list[int] = []
    for i in range(len(bounds) - 1):
        window = ParamInterval(bounds[i], bounds[i + 1])
        rep = window.representative()
        weight_at = inst.weights_at(rep)
        lines = []
        for e in range(inst.m):
            basis = view.delete(e).greedy_min_basis(weight_at)
            lines.append((e, inst.basis_line(basis)))
        local = envelope_of_lines(lines, window)
        for j, piece in enumerate(local.pieces):
            if pieces:
                cuts.append(local.cuts[j - 1] if j > 0 else crossings[i - 1])
            pieces.append(piece)
            assert local.labels is not None
            labels.append(local.labels[j])

    stitched = PWLFunction.build(inst.interval, cuts, pieces, labels)
    return build_solution(inst, stitched)


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of comparing two solutions on one interval."""

    value_equal: bool
    first_divergence: tuple[Fraction, Fraction, Fraction] | None
    argmax_consistent: bool

    @property
    def ok(self) -> bool:
        return self.value_equal and self.argmax_consistent


def _sample_points(a: Solution, b: Solution, samples: int) -> list[Fraction]:
    """Deterministic probe values: endpoints, all cuts of both, midpoints.

    Every cut of either solution is included so a divergence at a cut cannot
    hide between probes; extra evenly spaced points pad the list up to
    ``samples`` when the base set is smaller.
    """
    domain = a.value.domain
    base: set[Fraction] = set(a.value.cuts) | set(b.value.cuts)
    if domain.lo.is_finite:
        base.add(domain.lo.value)
    if domain.hi.is_finite:
        base.add(domain.hi.value)
    if not base:
        base.add(domain.representative())
    ordered = sorted(base)
    for x, y in zip(ordered, ordered[1:]):
        base.add((x + y) / 2)
    lo = min(base) if not domain.lo.is_finite else domain.lo.value
    hi = max(base) if not domain.hi.is_finite else domain.hi.value
    if not domain.lo.is_finite:
        base.add(lo - 1)
        lo -= 1
    if not domain.hi.is_finite:
        base.add(hi + 1)
        hi += 1
    extra = 0
    while len(base) < samples and lo < hi:
        extra += 1
        step = Fraction(hi - lo, samples + 1)
        candidate = lo + extra * step
        if candidate >= hi:
            break
        base.add(candidate)
    return sorted(base)


def compare(a: Solution, b: Solution, samples: int = 100) -> ComparisonReport:
    """Exact comparison of two solutions over the same interval.

    ``value_equal`` compares normalized value functions; the probe pass
    reports the first exact value mismatch and checks that the reported most
    vital elements are value-consistent (each solution's segment value equals
    its own value function, and both values agree, so differing labels can
    only be value ties).
    """
    if a.value.domain != b.value.domain:
        raise ValueError("solutions cover different intervals")
    value_equal = pwl_equal(a.value, b.value)
    first_divergence = None
    argmax_consistent = True
    for lam in _sample_points(a, b, samples):
        va, vb = a.value_at(lam), b.value_at(lam)
        if va != vb and first_divergence is None:
            first_divergence = (lam, va, vb)
        seg_a, seg_b = a.segment_at(lam), b.segment_at(lam)
        if not (seg_a.value(lam) == va and seg_b.value(lam) == vb and va == vb):
            argmax_consistent = False
    return ComparisonReport(value_equal, first_divergence, argmax_consistent)
