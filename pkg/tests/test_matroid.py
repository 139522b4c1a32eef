import random
from fractions import Fraction
from itertools import combinations

import pytest

from matroid_interdiction.matroid import (
    DoubledMatroid,
    GraphicMatroid,
    MatroidView,
    UniformMatroid,
)

from randinst import random_graphic

C4 = GraphicMatroid(4, ((0, 1), (1, 2), (2, 3), (3, 0)))


def const_weights(*values):
    table = {e: Fraction(v) for e, v in enumerate(values)}
    return lambda e: table[e]


def all_bases(view):
    """Exhaustive basis enumeration; the brute-force oracle for greedy."""
    ground = view.ground()
    rank = view.rank()
    return [
        frozenset(combo)
        for combo in combinations(ground, rank)
        if view.is_independent(combo)
    ]


class TestIndependence:
    def test_three_edges_of_a_four_cycle_are_a_tree(self):
        view = MatroidView.full(C4)
        assert view.is_independent({1, 2, 3})

    def test_the_full_cycle_is_dependent(self):
        view = MatroidView.full(C4)
        assert not view.is_independent({0, 1, 2, 3})

    def test_twin_pair_is_dependent(self):
        doubled = DoubledMatroid(GraphicMatroid(2, ((0, 1),)))
        view = MatroidView.full(doubled)
        assert not view.is_independent({0, 1})
        assert view.is_independent({0})
        assert view.is_independent({1})

    def test_self_loop_is_dependent(self):
        loop = GraphicMatroid(2, ((0, 1), (1, 1)))
        view = MatroidView.full(loop)
        assert not view.is_independent({1})
        assert view.is_independent({0})

    def test_doubled_matches_projection_without_twin_collisions(self):
        rng = random.Random(3)
        for _ in range(50):
            inst = random_graphic(rng, n_range=(3, 5), m_max=7)
            inner = inst.backend
            doubled = DoubledMatroid(inner)
            inner_view = MatroidView.full(inner)
            doubled_view = MatroidView.full(doubled)
            for _ in range(20):
                projection = [
                    e for e in range(inner.size) if rng.random() < 0.4
                ]
                lifted = [
                    e + inner.size if rng.random() < 0.5 else e for e in projection
                ]
                assert doubled_view.is_independent(lifted) == inner_view.is_independent(
                    projection
                )


class TestGreedy:
    def test_uniform_picks_cheapest_k(self):
        view = MatroidView.full(UniformMatroid(3, 2))
        assert view.greedy_min_basis(const_weights(1, 2, 3)) == {0, 1}

    def test_c4_parametric_weights_at_zero(self):
        # hand-run: order e3(0), e0(1), e1(2), e2(3); e2 closes the cycle
        view = MatroidView.full(C4)
        basis = view.greedy_min_basis(const_weights(1, 2, 3, 0))
        assert basis == {3, 0, 1}
        enumerated = all_bases(view)
        best = min(
            enumerated, key=lambda b: sum(const_weights(1, 2, 3, 0)(e) for e in b)
        )
        assert sum(const_weights(1, 2, 3, 0)(e) for e in basis) == sum(
            const_weights(1, 2, 3, 0)(e) for e in best
        )

    def test_tie_broken_by_smaller_id(self):
        view = MatroidView.full(UniformMatroid(2, 1))
        assert view.greedy_min_basis(const_weights(5, 5)) == {0}

    def test_empty_matroid_yields_empty_basis(self):
        view = MatroidView.full(UniformMatroid(0, 0))
        assert view.greedy_min_basis(lambda e: Fraction(0)) == frozenset()

    def test_matches_exhaustive_enumeration(self):
        rng = random.Random(5)
        for _ in range(40):
            inst = random_graphic(rng, n_range=(3, 5), m_max=9)
            view = inst.view()
            weight_at = inst.weights_at(Fraction(rng.randint(-5, 5)))
            greedy = view.greedy_min_basis(weight_at)
            assert view.is_independent(greedy)
            assert len(greedy) == view.rank()
            best = min(sum(weight_at(e) for e in b) for b in all_bases(view))
            assert sum(weight_at(e) for e in greedy) == best


class TestFundamentalCircuit:
    def test_whole_four_cycle(self):
        view = MatroidView.full(C4)
        assert view.fundamental_circuit(frozenset({1, 2, 3}), 0) == {0, 1, 2, 3}

    def test_parallel_pair(self):
        view = MatroidView.full(GraphicMatroid(2, ((0, 1), (0, 1))))
        assert view.fundamental_circuit(frozenset({0}), 1) == {0, 1}

    def test_uniform_two_set(self):
        view = MatroidView.full(UniformMatroid(3, 1))
        assert view.fundamental_circuit(frozenset({0}), 2) == {0, 2}

    def test_error_when_no_circuit(self):
        view = MatroidView.full(GraphicMatroid(3, ((0, 1), (1, 2))))
        with pytest.raises(ValueError):
            view.fundamental_circuit(frozenset({0}), 1)

    def test_circuit_minimality_exhaustive(self):
        rng = random.Random(9)
        for _ in range(30):
            inst = random_graphic(rng, n_range=(3, 5), m_max=10)
            view = inst.view()
            basis = view.greedy_min_basis(inst.weights_at(Fraction(0)))
            for f in view.ground():
                if f in basis:
                    continue
                circuit = view.fundamental_circuit(basis, f)
                assert not view.is_independent(circuit)
                for x in circuit:
                    assert view.is_independent(circuit - {x})


class TestComponents:
    def test_two_triangles_sharing_a_vertex(self):
        backend = GraphicMatroid(
            5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2))
        )
        parts = MatroidView.full(backend).components()
        assert parts.members[parts.component_of(0)] == {0, 1, 2}
        assert parts.members[parts.component_of(3)] == {3, 4, 5}

    def test_forest_has_only_singletons(self):
        backend = GraphicMatroid(3, ((0, 1), (1, 2)))
        parts = MatroidView.full(backend).components()
        assert parts.is_singleton(0) and parts.is_singleton(1)
        assert not parts.same_component(0, 1)

    def test_uniform_all_in_one_component(self):
        parts = MatroidView.full(UniformMatroid(4, 2)).components()
        assert parts.members[parts.component_of(0)] == {0, 1, 2, 3}

    def test_self_loop_is_its_own_component(self):
        backend = GraphicMatroid(2, ((0, 1), (0, 1), (1, 1)))
        parts = MatroidView.full(backend).components()
        assert parts.same_component(0, 1)
        assert parts.is_singleton(2)

    def test_circuit_route_agrees_with_biconnectivity_route(self):
        rng = random.Random(21)
        for _ in range(60):
            inst = random_graphic(rng, n_range=(3, 6), m_max=12)
            view = inst.view()
            assert view.components() == view.components_via_circuits()

    def test_circuit_route_agrees_on_restrictions(self):
        rng = random.Random(23)
        for _ in range(30):
            inst = random_graphic(rng, n_range=(4, 6), m_max=12)
            view = inst.view()
            subset = frozenset(e for e in view.ground() if rng.random() < 0.6)
            sub = view.restrict(subset)
            assert sub.components() == sub.components_via_circuits()


class TestReplacementElement:
    def test_only_non_tree_edge_replaces_anything(self):
        view = MatroidView.full(C4)
        weight_at = const_weights(1, 2, 3, 4)
        basis = frozenset({0, 1, 2})
        assert view.replacement_element(basis, 0, weight_at) == 3
        enumerated = [
            b for b in all_bases(view.delete(0))
        ]
        best = min(enumerated, key=lambda b: (sum(weight_at(e) for e in b),))
        assert best == basis - {0} | {3}

    def test_parallel_edge(self):
        view = MatroidView.full(GraphicMatroid(2, ((0, 1), (0, 1))))
        assert view.replacement_element(frozenset({0}), 0, const_weights(0, 1)) == 1

    def test_coloop_has_no_replacement(self):
        view = MatroidView.full(GraphicMatroid(2, ((0, 1),)))
        assert view.replacement_element(frozenset({0}), 0, const_weights(1)) is None

    def test_deleted_optimum_is_basis_minus_e_plus_replacement(self):
        rng = random.Random(31)
        for _ in range(60):
            inst = random_graphic(rng, n_range=(3, 6), m_max=12)
            view = inst.view()
            lam = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
            weight_at = inst.weights_at(lam)
            basis = view.greedy_min_basis(weight_at)
            for e in basis:
                replacement = view.replacement_element(basis, e, weight_at)
                deleted_opt = view.delete(e).greedy_min_basis(weight_at)
                if replacement is None:
                    assert len(deleted_opt) < len(basis)
                else:
                    assert deleted_opt == basis - {e} | {replacement}


class TestColoopScan:
    def test_cycle_has_none(self):
        assert MatroidView.full(C4).coloop_scan() == frozenset()

    def test_path_edges_are_bridges(self):
        backend = GraphicMatroid(3, ((0, 1), (1, 2)))
        assert MatroidView.full(backend).coloop_scan() == {0, 1}

    def test_free_matroid_is_all_coloops(self):
        assert MatroidView.full(UniformMatroid(3, 3)).coloop_scan() == {0, 1, 2}

    def test_uniform_below_rank_has_none(self):
        assert MatroidView.full(UniformMatroid(5, 3)).coloop_scan() == frozenset()

    def test_doubled_never_has_coloops(self):
        doubled = DoubledMatroid(GraphicMatroid(2, ((0, 1),)))
        assert MatroidView.full(doubled).coloop_scan() == frozenset()

    def test_agrees_with_rank_drop_definition(self):
        rng = random.Random(41)
        for _ in range(40):
            inst = random_graphic(rng, n_range=(3, 5), m_max=8)
            # bite off an edge to sometimes create bridges
            view = inst.view()
            if rng.random() < 0.5 and inst.m > 3:
                view = view.delete(rng.randrange(inst.m))
            rank = view.rank()
            expected = frozenset(
                e
                for e in view.ground()
                if view.restrict(frozenset(view.ground()) - {e}).rank() < rank
            )
            assert view.coloop_scan() == expected


class TestDoubledBackend:
    def test_rank_is_preserved(self):
        inner = GraphicMatroid(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
        assert MatroidView.full(DoubledMatroid(inner)).rank() == MatroidView.full(
            inner
        ).rank()

    def test_twin_indexing(self):
        doubled = DoubledMatroid(UniformMatroid(3, 2))
        assert doubled.twin(0) == 3 and doubled.twin(3) == 0
        assert doubled.project(4) == 1
