from itertools import permutations, product

from django.test import SimpleTestCase
from hypothesis import given, seed, settings, strategies as st
from rest_framework import serializers

from exact_linalg.fields import FieldSpec
from exact_linalg.matrix import ExactMatrix
from formalitykit.exceptions import InputValidationError
from .graphs import ConfigGraph, GraphError
from .kunneth import (
    EXTERIOR,
    SYMMETRIC,
    CharacteristicError,
    PoincarePolynomial,
    graded_power,
    induced_tree,
    kunneth_hom,
)
from .normalization import SerreDualityError, normalize_shifts
from .serializers import GraphSerializer, PoincareSerializer, graph_payload
from .signs import cycle_parity_holds, sign_assignment


def brute_force_power(P, n, kind):
    """
    Rank of the Koszul-signed (anti)symmetrizer on the n-th tensor power, per degree.
    """
    basis = [degree for degree, dim in P.dims.items() for _ in range(dim)]
    words = list(product(range(len(basis)), repeat=n))
    by_degree = {}
    for word in words:
        by_degree.setdefault(sum(basis[i] for i in word), []).append(word)
    dims = {}
    for degree, group in by_degree.items():
        index = {word: i for i, word in enumerate(group)}
        entries = {}
        for col, word in enumerate(group):
            for sigma in permutations(range(n)):
                sign = 1
                for a in range(n):
                    for b in range(a + 1, n):
                        if sigma.index(a) > sigma.index(b):
                            sign *= (-1) ** (basis[word[a]] * basis[word[b]])
                            if kind == EXTERIOR:
                                sign = -sign
                image = tuple(word[s] for s in sigma)
                key = (index[image], col)
                entries[key] = entries.get(key, 0) + sign
        dims[degree] = ExactMatrix(entries, (len(group), len(group))).rank()
    return PoincarePolynomial(dims)


@st.composite
def trees(draw, max_vertices=10):
    m = draw(st.integers(min_value=1, max_value=max_vertices))
    nk = draw(st.sampled_from([4, 6, 8]))
    edges = []
    for v in range(2, m + 1):
        parent = draw(st.integers(min_value=1, max_value=v - 1))
        a = draw(st.integers(min_value=-nk, max_value=2 * nk))
        edges.append((parent, v, {'a_uv': a, 'a_vu': nk - a}))
    return ConfigGraph(range(1, m + 1), edges), nk


class ConfigGraphTests(SimpleTestCase):
    def test_simple_graph_only(self):
        with self.assertRaises(GraphError):
            ConfigGraph([1], [(1, 1)])
        with self.assertRaises(GraphError):
            ConfigGraph([1, 2], [(1, 2), (2, 1)])
        with self.assertRaises(GraphError):
            ConfigGraph([1], [(1, 2)])

    def test_tree(self):
        self.assertTrue(ConfigGraph.path(4).is_tree())
        self.assertFalse(ConfigGraph.cycle(3).is_tree())
        self.assertTrue(ConfigGraph([1]).is_tree())


class NormalizeShiftsTests(SimpleTestCase):
    def test_a2(self):
        graph = ConfigGraph([1, 2], [(1, 2, {'a_uv': 3, 'a_vu': 1})])
        result = normalize_shifts(graph, 4)
        self.assertEqual(result.h, 2)
        self.assertEqual(result.shifts, {1: 0, 2: 1})
        self.assertEqual(result.normalized, {(1, 2): 2, (2, 1): 2})

    def test_single_vertex(self):
        self.assertEqual(normalize_shifts(ConfigGraph([1]), 4).shifts, {1: 0})

    def test_inconsistent_cycle(self):
        # a - h = 1, 0, 0 around the cycle: holonomy 1
        graph = ConfigGraph([1, 2, 3], [
            (1, 2, {'a_uv': 3, 'a_vu': 1}),
            (2, 3, {'a_uv': 2, 'a_vu': 2}),
            (3, 1, {'a_uv': 2, 'a_vu': 2}),
        ])
        result = normalize_shifts(graph, 4)
        self.assertFalse(result.feasible)
        self.assertEqual(sorted(result.witness), [1, 2, 3])
        self.assertEqual(abs(result.holonomy), 1)

    def test_consistent_cycle(self):
        graph = ConfigGraph.cycle(4, a_uv=2, a_vu=2)
        self.assertTrue(normalize_shifts(graph, 4).feasible)

    def test_serre_duality_violation(self):
        graph = ConfigGraph([1, 2], [(1, 2, {'a_uv': 3, 'a_vu': 3})])
        with self.assertRaises(SerreDualityError):
            normalize_shifts(graph, 4)

    def test_odd_nk(self):
        with self.assertRaises(InputValidationError):
            normalize_shifts(ConfigGraph([1]), 3)

    @seed(8)
    @settings(deadline=None, max_examples=20)
    @given(trees())
    def test_random_trees_normalize(self, instance):
        graph, nk = instance
        result = normalize_shifts(graph, nk)
        self.assertTrue(result.feasible)
        self.assertEqual(result.shifts[1], 0)
        for (i, j), degree in result.normalized.items():
            self.assertEqual(degree, nk // 2)
            self.assertEqual(graph.hom_degree(i, j) + result.shifts[i] - result.shifts[j], nk // 2)


class SignAssignmentTests(SimpleTestCase):
    def test_chain(self):
        result = sign_assignment(ConfigGraph.path(3, d=1))
        self.assertEqual(result.signs, {1: 1, 2: -1, 3: 1})

    def test_even_cycle(self):
        result = sign_assignment(ConfigGraph.cycle(4, d=1))
        self.assertEqual(result.signs, {1: 1, 2: -1, 3: 1, 4: -1})
        self.assertFalse(result.extrapolated)

    def test_odd_cycle(self):
        result = sign_assignment(ConfigGraph.cycle(3, d=1))
        self.assertFalse(result.feasible)
        self.assertEqual(sorted(result.witness), [1, 2, 3])

    def test_even_degrees_always_feasible(self):
        self.assertTrue(sign_assignment(ConfigGraph.cycle(3, d=2)).feasible)

    def test_mixed_parity_flagged(self):
        graph = ConfigGraph([1, 2, 3], [(1, 2, {'d': 1}), (2, 3, {'d': 1}), (3, 1, {'d': 2})])
        result = sign_assignment(graph)
        self.assertTrue(result.feasible)
        self.assertTrue(result.extrapolated)

    def test_missing_degree(self):
        with self.assertRaises(GraphError):
            sign_assignment(ConfigGraph.path(2))

    @seed(9)
    @settings(deadline=None, max_examples=30)
    @given(st.integers(min_value=3, max_value=7), st.lists(st.integers(0, 3), min_size=7, max_size=7),
           st.integers(min_value=1, max_value=3))
    def test_feasibility_matches_cycle_parity(self, m, degrees, chord):
        edges = [(i, i % m + 1, {'d': degrees[i - 1]}) for i in range(1, m + 1)]
        if m > 3 and chord + 2 <= m - 1:
            edges.append((1, chord + 2, {'d': degrees[-1]}))
        graph = ConfigGraph(range(1, m + 1), edges)
        result = sign_assignment(graph)
        self.assertEqual(result.feasible, cycle_parity_holds(graph))
        if result.feasible:
            for u, v in graph.edges:
                self.assertEqual(result.signs[u] * result.signs[v], (-1) ** graph.edge_degree(u, v))


class GradedPowerTests(SimpleTestCase):
    def test_odd_line_symmetric_power_vanishes(self):
        for m in (1, 3):
            for n in (2, 3, 4):
                self.assertTrue(graded_power(PoincarePolynomial.concentrated(m), n, SYMMETRIC).is_zero())

    def test_sphere_power_is_truncated_poly(self):
        P = PoincarePolynomial({0: 1, 2: 1})
        self.assertEqual(dict(graded_power(P, 3, SYMMETRIC).dims), {0: 1, 2: 1, 4: 1, 6: 1})

    def test_exterior_square(self):
        P = PoincarePolynomial({1: 1, 2: 1})
        self.assertEqual(dict(graded_power(P, 2, EXTERIOR).dims), {2: 1, 3: 1})

    def test_zeroth_power(self):
        P = PoincarePolynomial({1: 2, 4: 1})
        self.assertEqual(graded_power(P, 0, SYMMETRIC), PoincarePolynomial({0: 1}))
        self.assertEqual(graded_power(P, 0, EXTERIOR), PoincarePolynomial({0: 1}))

    def test_small_characteristic(self):
        with self.assertRaises(CharacteristicError):
            graded_power(PoincarePolynomial({0: 1}), 3, SYMMETRIC, FieldSpec(FieldSpec.PRIME, 3))
        graded_power(PoincarePolynomial({0: 1}), 3, SYMMETRIC, FieldSpec(FieldSpec.PRIME, 5))

    def test_against_signed_symmetrizers(self):
        fixtures = [
            {0: 1}, {1: 1}, {1: 1, 2: 1}, {0: 2}, {1: 2}, {0: 1, 1: 1, 2: 1}, {1: 3}, {2: 1, 3: 2},
        ]
        for dims in fixtures:
            P = PoincarePolynomial(dims)
            for n in (1, 2, 3):
                for kind in (SYMMETRIC, EXTERIOR):
                    with self.subTest(dims=dims, n=n, kind=kind):
                        self.assertEqual(graded_power(P, n, kind), brute_force_power(P, n, kind))


class KunnethTests(SimpleTestCase):
    def test_parity_table(self):
        for m in range(0, 5):
            P = PoincarePolynomial.concentrated(m)
            for n in range(2, 5):
                line = PoincarePolynomial.concentrated(n * m)
                zero = PoincarePolynomial()
                with self.subTest(m=m, n=n):
                    self.assertEqual(kunneth_hom(P, n, True), line if m % 2 == 0 else zero)
                    self.assertEqual(kunneth_hom(P, n, False), zero if m % 2 == 0 else line)

    def test_first_power_is_identity(self):
        for m in range(0, 5):
            P = PoincarePolynomial.concentrated(m)
            self.assertEqual(kunneth_hom(P, 1, True), P)
            self.assertEqual(kunneth_hom(P, 1, False), P)

    def test_induced_tree_edges_are_lines(self):
        graph = ConfigGraph([1, 2, 3, 4], [(1, 2, {'d': 1}), (2, 3, {'d': 2}), (2, 4, {'d': 3})])
        induced = induced_tree(graph, 3, sphere_degree=2)
        self.assertTrue(induced.feasible)
        self.assertTrue(induced.one_dimensional())
        self.assertEqual(induced.edges[(2, 4)], PoincarePolynomial.concentrated(9))
        self.assertEqual(dict(induced.vertices[1].dims), {0: 1, 2: 1, 4: 1, 6: 1})

    def test_induced_tree_infeasible_on_odd_cycle(self):
        induced = induced_tree(ConfigGraph.cycle(3, d=1), 2)
        self.assertFalse(induced.feasible)


class SerializerTests(SimpleTestCase):
    def test_graph(self):
        data = {'vertices': ['1', '2'], 'edges': [{'u': '1', 'v': '2', 'a_uv': 3, 'a_vu': 1}]}
        serializer = GraphSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        graph = serializer.save()
        self.assertEqual(graph.hom_degree('1', '2'), 3)
        self.assertEqual(graph_payload(graph)['edges'][0]['a_vu'], 1)

    def test_graph_self_loop(self):
        serializer = GraphSerializer(data={'vertices': ['1'], 'edges': [{'u': '1', 'v': '1'}]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        with self.assertRaises(serializers.ValidationError):
            serializer.save()

    def test_poincare(self):
        serializer = PoincareSerializer(data={'components': [{'degree': 0, 'dim': 1}, {'degree': 2, 'dim': 1}]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), PoincarePolynomial({0: 1, 2: 1}))

    def test_poincare_repeated_degree(self):
        serializer = PoincareSerializer(data={'components': [{'degree': 0, 'dim': 1}, {'degree': 0, 'dim': 2}]})
        self.assertFalse(serializer.is_valid())
