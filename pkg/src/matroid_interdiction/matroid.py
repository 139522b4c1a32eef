"""Matroid oracles with graphic, uniform and twinned backends.

The backends answer independence queries; everything else (greedy optimum,
fundamental circuits, components, replacement elements, coloops) is built on
top of them through :class:`MatroidView`, which restricts the ground set and
optionally records a single deleted element.

Views and bases are immutable and all queries are pure, so a view can be
shared between threads.  Graphic independence is an acyclicity check with a
fresh disjoint-set union per query, O(|S| alpha) per test; that is deliberate
desk-scale machinery, not the asymptotically optimal dynamic structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union


class ColoopError(ValueError):
    """An instance has elements whose deletion drops the rank.

    Interdicting such an element yields an unbounded objective, so the
    parametric interdiction solvers refuse the instance and report the
    offending elements instead.
    """

    def __init__(self, elements: Iterable[int]):
        self.elements = tuple(sorted(elements))
        names = ", ".join(f"e{e}" for e in self.elements)
        super().__init__(f"coloop elements present: {names}")


class _DisjointSet:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


@dataclass(frozen=True)
class GraphicMatroid:
    """Edge set of a multigraph; independent sets are the acyclic subsets.

    Parallel edges and self-loops are permitted.  A self-loop is a dependent
    singleton and can never enter a basis.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge e{e}=({u},{v}) has a node out of range")

    @property
    def size(self) -> int:
        return len(self.edges)

    def self_loops(self) -> tuple[int, ...]:
        return tuple(e for e, (u, v) in enumerate(self.edges) if u == v)

    def builder(self) -> "_GraphicBuilder":
        return _GraphicBuilder(self)


class _GraphicBuilder:
    __slots__ = ("edges", "dsu")

    def __init__(self, backend: GraphicMatroid):
        self.edges = backend.edges
        self.dsu = _DisjointSet(backend.node_count)

    def add(self, e: int) -> bool:
        u, v = self.edges[e]
        if u == v:
            return False
        return self.dsu.union(u, v)


@dataclass(frozen=True)
class UniformMatroid:
    """Ground set of ``m`` elements; a set is independent iff its size <= k."""

    m: int
    k: int

    def __post_init__(self):
        if self.k < 0 or self.m < 0:
            raise ValueError("m and k must be non-negative")

    @property
    def size(self) -> int:
        return self.m

    def builder(self) -> "_UniformBuilder":
        return _UniformBuilder(self.k)


class _UniformBuilder:
    __slots__ = ("k", "count")

    def __init__(self, k: int):
        self.k = k
        self.count = 0

    def add(self, e: int) -> bool:
        if self.count >= self.k:
            return False
        self.count += 1
        return True


@dataclass(frozen=True)
class DoubledMatroid:
    """Every inner element gains a parallel twin.

    Element ``e`` of the inner matroid appears as ``e`` and ``e + inner.size``;
    a set is independent iff it hits each twin pair at most once and its
    projection to the inner ground set is independent there.
    """

    inner: "Backend"

    @property
    def size(self) -> int:
        return 2 * self.inner.size

    def project(self, e: int) -> int:
        return e if e < self.inner.size else e - self.inner.size

    def twin(self, e: int) -> int:
        return e + self.inner.size if e < self.inner.size else e - self.inner.size

    def builder(self) -> "_DoubledBuilder":
        return _DoubledBuilder(self)


class _DoubledBuilder:
    __slots__ = ("backend", "seen", "inner")

    def __init__(self, backend: DoubledMatroid):
        self.backend = backend
        self.seen: set[int] = set()
        self.inner = backend.inner.builder()

    def add(self, e: int) -> bool:
        p = self.backend.project(e)
        if p in self.seen:
            return False
        if not self.inner.add(p):
            return False
        self.seen.add(p)
        return True


Backend = Union[GraphicMatroid, UniformMatroid, DoubledMatroid]


def edge_biconnected_components(
    node_count: int, edges: tuple[tuple[int, int], ...], active: Iterable[int]
) -> dict[int, int]:
    """Partition the active edges of a multigraph into 2-connected components.

    Returns a map from edge id to a canonical component id (the smallest edge
    id in the component).  Bridges and self-loops each form their own
    singleton component.  Iterative so deep graphs cannot overflow the stack.
    """
    adjacency: dict[int, list[tuple[int, int]]] = {}
    comp_of: dict[int, int] = {}
    for e in active:
        u, v = edges[e]
        if u == v:
            comp_of[e] = e
            continue
        adjacency.setdefault(u, []).append((e, v))
        adjacency.setdefault(v, []).append((e, u))

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    time = 0
    edge_stack: list[int] = []
    for root in sorted(adjacency):
        if root in disc:
            continue
        disc[root] = low[root] = time
        time += 1
        frames: list[list] = [[root, -1, iter(adjacency[root])]]
        while frames:
            u, parent_edge, neighbours = frames[-1]
            moved = False
            for eid, w in neighbours:
                if eid == parent_edge:
                    continue
                if w not in disc:
                    disc[w] = low[w] = time
                    time += 1
                    edge_stack.append(eid)
                    frames.append([w, eid, iter(adjacency[w])])
                    moved = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append(eid)
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            if moved:
                continue
            frames.pop()
            if frames:
                parent = frames[-1][0]
                if low[u] < low[parent]:
                    low[parent] = low[u]
                if low[u] >= disc[parent]:
                    group = []
                    while True:
                        top = edge_stack.pop()
                        group.append(top)
                        if top == parent_edge:
                            break
                    cid = min(group)
                    for e in group:
                        comp_of[e] = cid
    return comp_of


class ComponentPartition:
    """Partition of the active elements by the relation "share a circuit"."""

    def __init__(self, comp_of: dict[int, int]):
        members: dict[int, set[int]] = {}
        for e, c in comp_of.items():
            members.setdefault(c, set()).add(e)
        # canonical component id: the smallest member
        self.comp_of: dict[int, int] = {}
        self.members: dict[int, frozenset[int]] = {}
        for group in members.values():
            cid = min(group)
            self.members[cid] = frozenset(group)
            for e in group:
                self.comp_of[e] = cid
        self.singletons: frozenset[int] = frozenset(
            cid for cid, group in self.members.items() if len(group) == 1
        )

    def component_of(self, e: int) -> int:
        return self.comp_of[e]

    def same_component(self, e: int, f: int) -> bool:
        return self.comp_of[e] == self.comp_of[f]

    def is_singleton(self, e: int) -> bool:
        return self.comp_of[e] in self.singletons

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComponentPartition):
            return NotImplemented
        return self.comp_of == other.comp_of

    def __repr__(self) -> str:
        groups = sorted(tuple(sorted(g)) for g in self.members.values())
        return f"ComponentPartition({groups})"


WeightAt = Callable[[int], Fraction]


@dataclass(frozen=True)
class MatroidView:
    """A matroid restricted to an active subset, with one optional deletion.

    ``deleted`` is metadata recording a minus-one-element construction; the
    deleted element is excluded from ``active`` by construction.
    """

    backend: Backend
    active: frozenset[int]
    deleted: int | None = None

    @staticmethod
    def full(backend: Backend) -> "MatroidView":
        return MatroidView(backend, frozenset(range(backend.size)))

    def restrict(self, subset: Iterable[int]) -> "MatroidView":
        sub = frozenset(subset)
        if not sub <= self.active:
            raise ValueError("restriction must stay inside the active set")
        return MatroidView(self.backend, sub, self.deleted)

    def delete(self, e: int) -> "MatroidView":
        if e not in self.active:
            raise ValueError(f"e{e} is not active")
        return MatroidView(self.backend, self.active - {e}, e)

    def ground(self) -> list[int]:
        return sorted(self.active)

    def __contains__(self, e: int) -> bool:
        return e in self.active

    def is_independent(self, subset: Iterable[int]) -> bool:
        """Independence test; the caller guarantees ``subset`` is active."""
        builder = self.backend.builder()
        for e in subset:
            if not builder.add(e):
                return False
        return True

    def greedy_min_basis(self, weight_at: WeightAt) -> frozenset[int]:
        """The unique minimum basis under the order (weight, element id).

        The id tie-break makes the minimum basis unique even with repeated
        weights, so every solver in the package sees the same optimum.
        """
        order = sorted(self.active, key=lambda e: (weight_at(e), e))
        builder = self.backend.builder()
        basis = [e for e in order if builder.add(e)]
        return frozenset(basis)

    def rank(self) -> int:
        builder = self.backend.builder()
        return sum(1 for e in sorted(self.active) if builder.add(e))

    def fundamental_circuit(self, basis: frozenset[int], f: int) -> frozenset[int]:
        """The unique circuit inside ``basis + f`` for a non-basis element."""
        if f in basis:
            raise ValueError(f"e{f} already lies in the basis")
        with_f = set(basis)
        with_f.add(f)
        if self.is_independent(with_f):
            raise ValueError(f"basis + e{f} is independent; no circuit exists")
        circuit = {f}
        for g in basis:
            with_f.discard(g)
            if self.is_independent(with_f):
                circuit.add(g)
            with_f.add(g)
        return frozenset(circuit)

    def components_via_circuits(self) -> ComponentPartition:
        """Generic component computation from one basis.

        The fundamental circuits of a single basis generate the whole
        share-a-circuit relation, so uniting their members suffices.
        """
        ground = self.ground()
        index = {e: i for i, e in enumerate(ground)}
        builder = self.backend.builder()
        basis = frozenset(e for e in ground if builder.add(e))
        dsu = _DisjointSet(len(ground))
        for f in ground:
            if f in basis:
                continue
            for g in self.fundamental_circuit(basis, f):
                dsu.union(index[f], index[g])
        comp_of = {e: ground[dsu.find(index[e])] for e in ground}
        return ComponentPartition(comp_of)

    def components(self) -> ComponentPartition:
        if isinstance(self.backend, GraphicMatroid):
            comp_of = edge_biconnected_components(
                self.backend.node_count, self.backend.edges, self.active
            )
            return ComponentPartition(comp_of)
        return self.components_via_circuits()

    def replacement_element(
        self, basis: frozenset[int], e: int, weight_at: WeightAt
    ) -> int | None:
        """Cheapest element restoring a basis after deleting ``e``.

        Scans the non-basis elements in (weight, id) order with one
        independence test each; None means ``e`` is in every basis.
        """
        if e not in basis:
            raise ValueError(f"e{e} is not in the basis")
        rest = [x for x in basis if x != e]
        outside = sorted(
            (x for x in self.active if x not in basis),
            key=lambda x: (weight_at(x), x),
        )
        for r in outside:
            if self.is_independent(rest + [r]):
                return r
        return None

    def coloop_scan(self) -> frozenset[int]:
        """Elements whose deletion drops the rank (graphic: bridges)."""
        backend = self.backend
        if isinstance(backend, GraphicMatroid):
            comp_of = edge_biconnected_components(
                backend.node_count, backend.edges, self.active
            )
            partition = ComponentPartition(comp_of)
            return frozenset(
                e
                for e in self.active
                if partition.is_singleton(e)
                and backend.edges[e][0] != backend.edges[e][1]
            )
        if isinstance(backend, UniformMatroid):
            if len(self.active) <= backend.k:
                return frozenset(self.active)
            return frozenset()
        if isinstance(backend, DoubledMatroid) and len(self.active) == backend.size:
            return frozenset()
        full_rank = self.rank()
        out = []
        for e in sorted(self.active):
            builder = self.backend.builder()
            rank_without = sum(
                1 for x in sorted(self.active) if x != e and builder.add(x)
            )
            if rank_without < full_rank:
                out.append(e)
        return frozenset(out)
