from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, seed, settings, strategies as st
from rest_framework import serializers

from configurations.graphs import ConfigGraph
from formalitykit.exceptions import InputValidationError
from .algebras import (
    ORTHOGONAL,
    ZIGZAG,
    AlgebraError,
    GradedAlgebra,
    block_structure,
    build_configuration_algebra,
    center_basis,
    detect_idempotents,
    square_zero,
    truncated_poly,
    validate,
)
from .bimodules import GradedBimodule
from .serializers import AlgebraSerializer, algebra_payload
from .spaces import GradedVectorSpace, ZeroSpaceError, maxdeg, mindeg


class GradedVectorSpaceTests(SimpleTestCase):
    def test_drops_empty_degrees(self):
        V = GradedVectorSpace({0: ['a'], 3: []})
        self.assertEqual(V.dims(), {0: 1})

    def test_repeated_label(self):
        with self.assertRaises(InputValidationError):
            GradedVectorSpace({1: ['x', 'x']})

    def test_ground_field(self):
        k = GradedVectorSpace({0: ['1']})
        self.assertEqual(maxdeg(k), 0)
        self.assertEqual(mindeg(k), 0)

    def test_zero_space(self):
        with self.assertRaises(ZeroSpaceError):
            maxdeg(GradedVectorSpace())
        with self.assertRaises(ZeroSpaceError):
            mindeg(GradedVectorSpace())

    def test_shift(self):
        V = GradedVectorSpace.from_dims({0: 1, 4: 2})
        self.assertEqual(V.shift(3).dims(), {-3: 1, 1: 2})
        self.assertEqual(maxdeg(V.shift(3)), maxdeg(V) - 3)

    def test_direct_sum(self):
        V = GradedVectorSpace({0: ['a']}).direct_sum(GradedVectorSpace({0: ['b'], 1: ['c']}))
        self.assertEqual(V.dims(), {0: 2, 1: 1})


class TruncatedPolyTests(SimpleTestCase):
    def test_spherical_case(self):
        A = truncated_poly(1, 2)
        self.assertEqual(A.dim, 2)
        self.assertEqual(A.support(), (0, 2))
        self.assertTrue(validate(A).passed)

    def test_maxdeg(self):
        A = truncated_poly(2, 2)
        self.assertEqual(A.support(), (0, 2, 4))
        self.assertEqual(maxdeg(A.as_space()), 4)

    def test_defining_relation(self):
        A = truncated_poly(3, 1)
        self.assertEqual(A.multiply({'t': 1}, {'t^2': 1}), {'t^3': 1})
        self.assertEqual(A.multiply({'t^2': 1}, {'t^2': 1}), {})

    @seed(7)
    @settings(deadline=None, max_examples=25)
    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=8))
    def test_validates(self, n, k):
        A = truncated_poly(n, k)
        self.assertTrue(validate(A).passed)
        self.assertEqual(maxdeg(A.as_space()), n * k)

    def test_bad_arguments(self):
        with self.assertRaises(AlgebraError):
            truncated_poly(0, 2)


class ValidateTests(SimpleTestCase):
    def test_grading_violation(self):
        A = GradedAlgebra(
            [('1', 0), ('t', 1), ('s', 3)],
            {('1', '1'): {'1': 1}, ('1', 't'): {'t': 1}, ('t', '1'): {'t': 1},
             ('1', 's'): {'s': 1}, ('s', '1'): {'s': 1}, ('t', 't'): {'s': 1}},
            {'1': 1},
        )
        report = validate(A)
        self.assertFalse(report.passed)
        self.assertIn('grading', report.kinds())
        self.assertIn(('t', 't'), [v.elements for v in report.violations if v.kind == 'grading'])

    def test_associativity_violation(self):
        mult = {('1', x): {x: 1} for x in ('1', 'x', 'y')}
        mult.update({(x, '1'): {x: 1} for x in ('x', 'y')})
        mult[('x', 'x')] = {'y': 1}
        mult[('x', 'y')] = {'y': 1}
        A = GradedAlgebra([('1', 0), ('x', 0), ('y', 0)], mult, {'1': 1})
        self.assertIn('associativity', validate(A).kinds())

    def test_unit_violation(self):
        A = GradedAlgebra([('1', 0), ('x', 2)], {('1', '1'): {'1': 1}}, {'1': 1})
        self.assertIn('left_unit', validate(A).kinds())

    def test_square_zero(self):
        A = square_zero(1)
        self.assertTrue(validate(A).passed)
        self.assertEqual(A.multiply({'x': 1}, {'x': 1}), {})


class ConfigurationAlgebraTests(SimpleTestCase):
    def test_single_vertex_is_truncated_poly(self):
        A = build_configuration_algebra(ConfigGraph(['1'], []), 2, 3, 3)
        self.assertEqual(A.dim, 3)
        self.assertEqual(A.support(), truncated_poly(2, 3).support())

    def test_orthogonal_a2(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        self.assertEqual(A.dim, 8)
        self.assertEqual(A.multiply({'a12': 1}, {'a21': 1}), {})
        self.assertEqual(A.multiply({'a21': 1}, {'a12': 1}), {})
        self.assertEqual(A.multiply({'e2': 1}, {'a12': 1}), {'a12': 1})
        self.assertEqual(A.multiply({'a12': 1}, {'e1': 1}), {'a12': 1})
        self.assertEqual(mindeg(A.augmentation_ideal()), 2)

    def test_zigzag_a2(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 1, ZIGZAG)
        self.assertTrue(validate(A).passed)
        self.assertEqual(A.multiply({'a21': 1}, {'a12': 1}), {'t1': 1})
        self.assertEqual(A.multiply({'a12': 1}, {'a21': 1}), {'t2': 1})
        # (a12 a21) a12 = t2 a12 = 0 and a12 (a21 a12) = a12 t1 = 0
        left = A.multiply(A.multiply({'a12': 1}, {'a21': 1}), {'a12': 1})
        right = A.multiply({'a12': 1}, A.multiply({'a21': 1}, {'a12': 1}))
        self.assertEqual(left, {})
        self.assertEqual(right, {})

    def test_zigzag_infeasible(self):
        with self.assertRaises(AlgebraError):
            build_configuration_algebra(ConfigGraph.path(2), 2, 4, 3, ZIGZAG)
        with self.assertRaises(AlgebraError):
            build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2, ZIGZAG)

    def test_zigzag_below_top_power_is_not_associative(self):
        with self.assertRaises(AlgebraError):
            build_configuration_algebra(ConfigGraph.path(2), 2, 2, 1, ZIGZAG)

    def test_unknown_preset(self):
        with self.assertRaises(AlgebraError):
            build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, 'braided')

    @seed(11)
    @settings(deadline=None, max_examples=15)
    @given(
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=1, max_value=4),
    )
    def test_basis_count_and_idempotents(self, m, n, k, h):
        graph = ConfigGraph.path(m)
        A = build_configuration_algebra(graph, n, k, h)
        self.assertEqual(A.dim, m + m * n + 2 * len(graph.edges))
        idempotents = detect_idempotents(A)
        self.assertEqual(idempotents, [{f'e{v}': 1} for v in graph.vertices])
        self.assertEqual(sorted(A.degree_part(0)), sorted(f'e{v}' for v in graph.vertices))

    def test_block_structure(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2)
        blocks = block_structure(A)
        self.assertEqual(blocks['a12'], (1, 0))
        self.assertEqual(blocks['t1'], (0, 0))


class CenterTests(SimpleTestCase):
    def test_commutative_algebra(self):
        A = truncated_poly(2, 2)
        self.assertEqual(len(center_basis(A, 2)), 1)

    def test_configuration_degree_zero(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2)
        (z,) = center_basis(A, 0)
        self.assertEqual(z, {'e1': Fraction(1), 'e2': Fraction(1)})


class BimoduleTests(SimpleTestCase):
    def test_regular_validates(self):
        M = GradedBimodule.regular(truncated_poly(2, 1))
        self.assertTrue(M.validate().passed)

    def test_shift(self):
        M = GradedBimodule.regular(truncated_poly(2, 2))
        shifted = M.shift(3)
        self.assertEqual(maxdeg(shifted.space), maxdeg(M.space) - 3)
        self.assertEqual(shifted.space.dims(), {-3: 1, -1: 1, 1: 1})

    def test_block_structure(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2)
        M = GradedBimodule.regular(A)
        blocks = M.block_structure(detect_idempotents(A))
        self.assertEqual(blocks['a21'], (0, 1))


class AlgebraSerializerTests(SimpleTestCase):
    def test_round_trip_of_configuration_algebra(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 1, 2, 1, ZIGZAG)
        serializer = AlgebraSerializer(data=algebra_payload(A))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        B = serializer.save()
        self.assertEqual(B.basis, A.basis)
        self.assertEqual({key: dict(value) for key, value in B.mult.items()},
                         {key: dict(value) for key, value in A.mult.items()})

    def test_unit_defaults_to_degree_zero_element(self):
        data = {
            'basis': [{'label': '1', 'degree': 0}, {'label': 'x', 'degree': 1}],
            'mult': [
                {'left': '1', 'right': '1', 'result': [{'label': '1'}]},
                {'left': '1', 'right': 'x', 'result': [{'label': 'x', 'coeff': '1'}]},
                {'left': 'x', 'right': '1', 'result': [{'label': 'x', 'coeff': '1'}]},
            ],
        }
        serializer = AlgebraSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(dict(serializer.save().unit), {'1': 1})

    def test_missing_mult(self):
        serializer = AlgebraSerializer(data={'basis': [{'label': '1', 'degree': 0}]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('mult', serializer.errors)

    def test_unknown_label(self):
        data = {
            'basis': [{'label': '1', 'degree': 0}],
            'mult': [{'left': '1', 'right': 'y', 'result': []}],
        }
        serializer = AlgebraSerializer(data=data)
        self.assertFalse(serializer.is_valid())

    def test_invalid_algebra_rejected_on_save(self):
        data = {
            'basis': [{'label': '1', 'degree': 0}, {'label': 'x', 'degree': 2}],
            'mult': [{'left': '1', 'right': '1', 'result': [{'label': '1'}]}],
        }
        serializer = AlgebraSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        with self.assertRaises(serializers.ValidationError):
            serializer.save()
