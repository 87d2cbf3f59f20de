from fractions import Fraction
from itertools import product as words_over

from django.test import SimpleTestCase
from hypothesis import given, seed, settings, strategies as st

from configurations.graphs import ConfigGraph
from formalitykit.exceptions import Inconclusive, ResourceLimitExceeded
from graded_algebra.algebras import ORTHOGONAL, ZIGZAG, build_configuration_algebra
from graded_algebra.spaces import mindeg
from .ideals import (
    augmentation_ideal,
    generated_ideal,
    ideal_sum,
    meet,
    power,
    product,
)
from .serializers import PresentationSerializer, presentation_payload
from .tensor import (
    Generator,
    PresentationError,
    TensorPresentation,
    TruncationError,
    configuration_presentation,
    word_basis,
)
from .tor import EVEN, ODD, mindeg_bound, nilpotence_index, quotient_dims, tor_degree_ceiling, tor_term


def single(n, k, truncation):
    return TensorPresentation(1, [Generator('t', 0, 0, k)], [[(('t',) * (n + 1), 1)]], truncation)


def monomials(pres, words):
    seeds = []
    for word in words:
        d = pres.word_degree(word)
        s, t = pres.word_block(word)
        index = pres.word_index(d, s, t)
        vector = [Fraction(0)] * len(index)
        vector[index[tuple(word)]] = Fraction(1)
        seeds.append(((d, s, t), tuple(vector)))
    return generated_ideal(pres, seeds)


class WordBasisTests(SimpleTestCase):
    def test_single_generator(self):
        pres = single(2, 3, 12)
        self.assertEqual(word_basis(pres, 9), [('t', 't', 't')])
        self.assertEqual(word_basis(pres, 4), [])

    def test_degree_zero_is_idempotents(self):
        pres = configuration_presentation(ConfigGraph.path(3), 2, 2, 2)
        self.assertEqual(word_basis(pres, 0), [('e0',), ('e1',), ('e2',)])

    def test_a2_composable_pairs(self):
        pres = configuration_presentation(ConfigGraph.path(2), 2, 2, 2)
        words = word_basis(pres, 4)
        self.assertEqual(len(words), 8)
        self.assertIn(('a12', 'a21'), words)
        self.assertNotIn(('a12', 't1'), words)

    def test_degree_above_truncation(self):
        with self.assertRaises(TruncationError):
            word_basis(single(1, 2, 4), 6)


class PresentationValidationTests(SimpleTestCase):
    def test_relation_must_be_composable(self):
        gens = [Generator('a', 0, 1, 1), Generator('b', 0, 1, 1)]
        with self.assertRaisesMessage(PresentationError, 'not composable'):
            TensorPresentation(2, gens, [[(('a', 'b'), 1)]], 4)

    def test_relation_must_be_homogeneous(self):
        gens = [Generator('x', 0, 0, 1), Generator('y', 0, 0, 2)]
        with self.assertRaisesMessage(PresentationError, 'not homogeneous'):
            TensorPresentation(1, gens, [[(('x', 'x'), 1), (('y', 'y'), 1)]], 4)

    def test_relation_must_lie_in_j_squared(self):
        gens = [Generator('x', 0, 0, 2), Generator('y', 0, 0, 3)]
        with self.assertRaisesMessage(PresentationError, 'J^2'):
            TensorPresentation(1, gens, [[(('y',), 1)]], 4)

    def test_truncation_cap(self):
        with self.assertRaises(ResourceLimitExceeded):
            TensorPresentation(1, [Generator('t', 0, 0, 1)], [], 50, max_truncation=10)

    def test_zigzag_needs_matching_power(self):
        with self.assertRaises(PresentationError):
            configuration_presentation(ConfigGraph.path(2), 2, 2, 1, ZIGZAG)


class IdealTests(SimpleTestCase):
    def test_j_squared(self):
        pres = single(1, 2, 10)
        J = augmentation_ideal(pres)
        self.assertEqual(product(J, J).dims(), {4: 1, 6: 1, 8: 1, 10: 1})

    def test_monomial_square(self):
        n = 2
        pres = TensorPresentation(1, [Generator('t', 0, 0, 1)], [], 10)
        I = monomials(pres, [('t',) * (n + 1)])
        self.assertEqual(product(I, I).mindeg(), 2 * (n + 1))
        self.assertEqual(product(I, I), monomials(pres, [('t',) * (2 * (n + 1))]))

    def test_meet_of_nested_monomials(self):
        pres = TensorPresentation(1, [Generator('t', 0, 0, 1)], [], 8)
        cubes = monomials(pres, [('t', 't', 't')])
        squares = monomials(pres, [('t', 't')])
        self.assertEqual(meet(cubes, squares), cubes)
        self.assertEqual(ideal_sum(cubes, squares), squares)

    def test_power_zero_is_everything(self):
        pres = single(1, 1, 4)
        self.assertEqual(power(generated_ideal(pres), 0).dims(), {0: 1, 1: 1, 2: 1, 3: 1, 4: 1})

    def test_relation_ideal_is_closed(self):
        pres = configuration_presentation(ConfigGraph.path(2), 2, 2, 2)
        self.assertTrue(generated_ideal(pres).is_closed())
        pres = configuration_presentation(ConfigGraph.path(3), 2, 2, 2, ZIGZAG)
        self.assertTrue(generated_ideal(pres).is_closed())

    @seed(31)
    @settings(deadline=None, max_examples=30)
    @given(
        st.lists(st.text('xy', min_size=1, max_size=3), min_size=1, max_size=3),
        st.lists(st.text('xy', min_size=1, max_size=3), min_size=1, max_size=3),
    )
    def test_monomial_calculus_against_brute_force(self, first, second):
        top = 5
        gens = [Generator('x', 0, 0, 1), Generator('y', 0, 0, 1)]
        pres = TensorPresentation(1, gens, [], top)
        I1 = monomials(pres, [tuple(w) for w in first])
        I2 = monomials(pres, [tuple(w) for w in second])

        def inside(word, generators):
            text = ''.join(word)
            return any(g in text for g in generators)

        def count(predicate):
            dims = {}
            for d in range(1, top + 1):
                n = sum(1 for w in words_over('xy', repeat=d) if predicate(w))
                if n:
                    dims[d] = n
            return dims

        self.assertEqual(I1.dims(), count(lambda w: inside(w, first)))
        self.assertEqual(ideal_sum(I1, I2).dims(), count(lambda w: inside(w, first) or inside(w, second)))
        self.assertEqual(meet(I1, I2).dims(), count(lambda w: inside(w, first) and inside(w, second)))
        self.assertEqual(
            product(I1, I2).dims(),
            count(lambda w: any(inside(w[:i], first) and inside(w[i:], second) for i in range(1, len(w)))),
        )

        low1, low2 = I1.mindeg(), I2.mindeg()
        self.assertEqual(ideal_sum(I1, I2).mindeg(), min(low1, low2))
        if meet(I1, I2).mindeg() is not None:
            self.assertGreaterEqual(meet(I1, I2).mindeg(), max(low1, low2))
        if product(I1, I2).mindeg() is not None:
            self.assertGreaterEqual(product(I1, I2).mindeg(), low1 + low2)


class TorTests(SimpleTestCase):
    def test_single_generator_matches_periodic_grading(self):
        for n in (1, 2, 3):
            for k in (1, 2, 3):
                pres = single(n, k, 3 * (n + 1) * k + 3 * n * k)
                I = generated_ideal(pres)
                for q in range(7):
                    p = q // 2
                    expected = p * (n + 1) * k if q % 2 == 0 else (p * (n + 1) + 1) * k
                    with self.subTest(n=n, k=k, q=q):
                        self.assertEqual(tor_term(pres, q, I).dims(), {expected: 1})

    def test_truncation_independence(self):
        for n, k in [(1, 2), (2, 1), (2, 3)]:
            for q in range(2, 6):
                N = n + 1
                ceiling = (q // 2) * (n + 1) * k + (q // 2 - (q % 2 == 0)) * (N - 1) * k
                low = single(n, k, max(ceiling, N * k))
                high = single(n, k, low.truncation + k)
                with self.subTest(n=n, k=k, q=q):
                    self.assertEqual(tor_degree_ceiling(low, q), ceiling)
                    self.assertEqual(tor_term(low, q).dims(), tor_term(high, q).dims())

    def test_nilpotence_index(self):
        self.assertEqual(nilpotence_index(single(3, 2, 8)), 4)
        self.assertEqual(nilpotence_index(configuration_presentation(ConfigGraph.path(2), 2, 2, 2)), 3)

    def test_free_algebra_is_inconclusive(self):
        pres = TensorPresentation(1, [Generator('t', 0, 0, 1)], [], 10)
        with self.assertRaises(Inconclusive):
            tor_term(pres, 2)

    def test_truncation_too_small(self):
        with self.assertRaisesMessage(TruncationError, 'increase truncation'):
            tor_term(single(1, 2, 6), 4)

    def test_low_degrees(self):
        pres = configuration_presentation(ConfigGraph.path(2), 2, 2, 2)
        self.assertEqual(tor_term(pres, 0).dims(), {0: 2})
        self.assertEqual(tor_term(pres, 1).dims(), {2: 4})

    def test_orthogonal_a2(self):
        n, k, h = 2, 2, 2
        pres = configuration_presentation(ConfigGraph.path(2), n, k, h, ORTHOGONAL)
        A = build_configuration_algebra(ConfigGraph.path(2), n, k, h, ORTHOGONAL)
        self.assertEqual(quotient_dims(pres, algebra=A), {0: 2, 2: 4, 4: 2})
        tor2 = tor_term(pres, 2)
        self.assertEqual(tor2.dims(), {4: 6, 6: 2})
        self.assertGreaterEqual(mindeg(tor2), h + k)

    def test_quotient_mismatch(self):
        pres = configuration_presentation(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2, ORTHOGONAL)
        with self.assertRaises(PresentationError):
            quotient_dims(pres, algebra=A)

    def test_bound_holds_on_single_generator(self):
        for n in (1, 2, 3):
            for k in (1, 2):
                pres = single(n, k, 3 * (n + 1) * k + 3 * n * k)
                for q in range(2, 7):
                    bound = mindeg_bound((n + 1) * k, k, EVEN if q % 2 == 0 else ODD)
                    with self.subTest(n=n, k=k, q=q):
                        self.assertGreaterEqual(mindeg(tor_term(pres, q)), bound.for_q(q))


class MindegBoundTests(SimpleTestCase):
    def test_pn_configuration(self):
        h, k = 3, 2
        bound = mindeg_bound(h + k, k, EVEN)
        for p in range(1, 11):
            self.assertEqual(bound.at(p), p * (h + k))

    def test_spherelike_configuration(self):
        h = 3
        bound = mindeg_bound(2 * h, h, EVEN)
        for p in range(1, 11):
            self.assertEqual(bound.at(p), 2 * p * h)

    def test_smallest_odd(self):
        self.assertEqual(mindeg_bound(2, 1, ODD).for_q(3), 3)

    def test_preconditions(self):
        with self.assertRaises(PresentationError):
            mindeg_bound(3, 2, EVEN)
        with self.assertRaises(PresentationError):
            mindeg_bound(4, 2, ODD).for_q(4)

    def test_affine_rendering(self):
        self.assertEqual(str(mindeg_bound(5, 2, ODD).pieces[0]), '5p+2')
        self.assertEqual(str(mindeg_bound(4, 1, EVEN).pieces[1]), '4p-2')


class PresentationSerializerTests(SimpleTestCase):
    def test_round_trip(self):
        pres = configuration_presentation(ConfigGraph.path(2), 2, 2, 2, ZIGZAG)
        serializer = PresentationSerializer(data=presentation_payload(pres))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        copy = serializer.save()
        self.assertEqual(copy.generators, pres.generators)
        self.assertEqual(copy.relations, pres.relations)
        self.assertEqual(quotient_dims(copy), quotient_dims(pres))

    def test_vertex_out_of_range(self):
        data = {'vertices': 1, 'generators': [{'label': 't', 'src': 0, 'tgt': 1, 'deg': 2}],
                'relations': [], 'truncation': 4}
        serializer = PresentationSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('generators', serializer.errors)

    def test_unknown_generator(self):
        data = {'vertices': 1, 'generators': [{'label': 't', 'src': 0, 'tgt': 0, 'deg': 2}],
                'relations': [[{'word': ['t', 's']}]], 'truncation': 4}
        serializer = PresentationSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('relations', serializer.errors)

    def test_truncation_cap_from_context(self):
        data = {'vertices': 1, 'generators': [{'label': 't', 'src': 0, 'tgt': 0, 'deg': 1}],
                'relations': [[{'word': ['t', 't']}]], 'truncation': 40}
        serializer = PresentationSerializer(data=data, context={'max_truncation': 20})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        with self.assertRaises(ResourceLimitExceeded):
            serializer.save()
