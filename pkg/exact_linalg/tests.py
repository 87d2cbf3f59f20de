from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, seed, settings, strategies as st
from rest_framework import serializers

from .fields import RATIONALS, FieldError, FieldSpec
from .matrix import (
    DimensionMismatch,
    ExactMatrix,
    NotASubspace,
    contains,
    kernel_basis,
    quotient_dim,
    rank,
    row_basis,
    span_dim,
    subspace_meet,
    subspace_sum,
)
from .serializers import RationalField, rational_string

F5 = FieldSpec(FieldSpec.PRIME, 5)


@st.composite
def small_matrices(draw, max_dim=4, bound=3):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = st.integers(min_value=-bound, max_value=bound)
    return draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows))


@st.composite
def subspace_pairs(draw, ambient=4):
    vector = st.lists(st.integers(min_value=-2, max_value=2), min_size=ambient, max_size=ambient)
    U = draw(st.lists(vector, min_size=0, max_size=4))
    W = draw(st.lists(vector, min_size=0, max_size=4))
    return U, W


class FieldSpecTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(FieldSpec.parse('rationals'), RATIONALS)
        self.assertEqual(FieldSpec.parse('fp:7'), FieldSpec(FieldSpec.PRIME, 7))
        self.assertEqual(str(FieldSpec.parse('FP:7')), 'fp:7')

    def test_rejects_composite_modulus(self):
        with self.assertRaises(FieldError):
            FieldSpec(FieldSpec.PRIME, 4)
        with self.assertRaises(FieldError):
            FieldSpec.parse('fp:x')
        with self.assertRaises(FieldError):
            FieldSpec.parse('reals')

    def test_denominator_divisible_by_p(self):
        F7 = FieldSpec(FieldSpec.PRIME, 7)
        with self.assertRaises(FieldError):
            F7.element(Fraction(1, 7))
        self.assertEqual(F7.to_fraction(F7.element(Fraction(1, 2))), 4)

    def test_characteristic(self):
        self.assertEqual(RATIONALS.characteristic, 0)
        self.assertEqual(F5.characteristic, 5)


class RankTests(SimpleTestCase):
    def test_identity(self):
        self.assertEqual(rank(ExactMatrix.from_rows([[1, 0], [0, 1]])), 2)

    def test_zero(self):
        self.assertEqual(rank(ExactMatrix({}, (3, 4))), 0)

    def test_dependent_rows(self):
        self.assertEqual(rank(ExactMatrix.from_rows([[1, 2], [2, 4]])), 1)

    def test_rank_depends_on_field(self):
        rows = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
        self.assertEqual(rank(ExactMatrix.from_rows(rows)), 3)
        self.assertEqual(rank(ExactMatrix.from_rows(rows, FieldSpec(FieldSpec.PRIME, 7))), 3)
        self.assertEqual(rank(ExactMatrix.from_rows(rows, FieldSpec(FieldSpec.PRIME, 3))), 2)

    def test_rational_entries(self):
        M = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
        self.assertEqual(rank(M), 1)

    def test_ragged_rows_rejected(self):
        with self.assertRaises(DimensionMismatch):
            ExactMatrix.from_rows([[1, 2], [3]])


class KernelTests(SimpleTestCase):
    def test_identity(self):
        self.assertEqual(kernel_basis(ExactMatrix.from_rows([[1, 0], [0, 1]])), [])

    def test_zero(self):
        self.assertEqual(len(kernel_basis(ExactMatrix({}, (2, 2)))), 2)

    def test_single_equation(self):
        (v,) = kernel_basis(ExactMatrix.from_rows([[1, 1]]))
        self.assertEqual(span_dim([v, (1, -1)]), 1)

    def test_kernel_over_prime_field(self):
        M = ExactMatrix.from_rows([[1, 2], [3, 1]], F5)
        self.assertEqual(rank(M), 1)
        (v,) = kernel_basis(M)
        self.assertTrue(all(x % 5 == 0 for x in M.apply(v)))


class MatmulTests(SimpleTestCase):
    def test_product(self):
        M = ExactMatrix.from_rows([[1, 2], [0, 1]])
        N = ExactMatrix.from_rows([[1, -2], [0, 1]])
        self.assertEqual(M.matmul(N), ExactMatrix.from_rows([[1, 0], [0, 1]]))

    def test_product_vanishes_mod_p(self):
        M = ExactMatrix.from_rows([[1, 1]], F5)
        N = ExactMatrix.from_rows([[2], [3]], F5)
        self.assertTrue(M.matmul(N).is_zero())

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            ExactMatrix({}, (2, 3)).matmul(ExactMatrix({}, (2, 3)))


class SubspaceTests(SimpleTestCase):
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)

    def test_meet_idempotent(self):
        self.assertEqual(span_dim(subspace_meet([(1, 0)], [(1, 0)])), 1)

    def test_meet_trivial(self):
        self.assertEqual(subspace_meet([(1, 0)], [(0, 1)]), [])

    def test_meet_of_planes(self):
        meet = subspace_meet([self.e1, self.e2], [self.e2, self.e3])
        self.assertEqual(len(meet), 1)
        self.assertTrue(contains([self.e2], meet))

    def test_meet_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            subspace_meet([(1, 0)], [(1, 0, 0)])

    def test_quotient(self):
        self.assertEqual(quotient_dim([self.e1], [self.e1]), 0)
        self.assertEqual(quotient_dim([self.e1, self.e2, self.e3], [], ambient=3), 3)
        self.assertEqual(quotient_dim([(1, 0), (0, 1)], [(1, 1)]), 1)

    def test_quotient_refuses_non_subspace(self):
        with self.assertRaises(NotASubspace):
            quotient_dim([self.e1], [self.e2])

    def test_row_basis_is_canonical(self):
        self.assertEqual(row_basis([(1, 1), (1, -1)]), row_basis([(2, 0), (0, 3)]))

    def test_sum(self):
        self.assertEqual(len(subspace_sum([self.e1], [self.e1, self.e2])), 2)


class PropertyTests(SimpleTestCase):
    @seed(20240611)
    @settings(deadline=None, max_examples=60)
    @given(small_matrices())
    def test_rank_nullity(self, rows):
        M = ExactMatrix.from_rows(rows)
        kernel = kernel_basis(M)
        self.assertEqual(rank(M) + len(kernel), M.cols)
        self.assertLessEqual(rank(M), min(M.shape))
        for v in kernel:
            self.assertEqual(M.apply(v), (0,) * M.rows)

    @seed(20240612)
    @settings(deadline=None, max_examples=60)
    @given(small_matrices())
    def test_rank_nullity_mod_p(self, rows):
        M = ExactMatrix.from_rows(rows, F5)
        kernel = kernel_basis(M)
        self.assertEqual(rank(M) + len(kernel), M.cols)
        for v in kernel:
            self.assertTrue(all(x % 5 == 0 for x in M.apply(v)))

    @seed(20240613)
    @settings(deadline=None, max_examples=60)
    @given(subspace_pairs())
    def test_modular_law(self, pair):
        U, W = pair
        dim_u = span_dim(U, ambient=4)
        dim_w = span_dim(W, ambient=4)
        dim_sum = len(subspace_sum(U, W, ambient=4))
        meet = subspace_meet(U, W, ambient=4)
        self.assertEqual(dim_u + dim_w, dim_sum + len(meet))
        self.assertTrue(contains(U, meet, ambient=4))
        self.assertTrue(contains(W, meet, ambient=4))


class RationalFieldTests(SimpleTestCase):
    def test_canonical_strings(self):
        self.assertEqual(rational_string(Fraction(3)), '3')
        self.assertEqual(rational_string(Fraction(-2, 4)), '-1/2')

    def test_parse(self):
        field = RationalField()
        self.assertEqual(field.to_internal_value('-1/2'), Fraction(-1, 2))
        self.assertEqual(field.to_internal_value(3), Fraction(3))
        with self.assertRaises(serializers.ValidationError):
            field.to_internal_value(0.5)
        with self.assertRaises(serializers.ValidationError):
            field.to_internal_value('1/0')
