from fractions import Fraction

from django.test import SimpleTestCase

from configurations.graphs import ConfigGraph
from formalitykit.exceptions import ResourceLimitExceeded
from graded_algebra.algebras import (
    ORTHOGONAL,
    build_configuration_algebra,
    center_basis,
    square_zero,
    truncated_poly,
)
from graded_algebra.bimodules import GradedBimodule
from .bar import ABSOLUTE, RELATIVE, bar_slice, hh_bar
from .resolutions import (
    PeriodicResolutionSpec,
    ResolutionError,
    ResolutionTerm,
    hh_resolution,
    periodic_resolution,
    validate_resolution,
)
from .scan import kadeishvili_scan
from .serializers import ResolutionSerializer, resolution_payload

SMALL_ALGEBRAS = [
    truncated_poly(1, 2),
    truncated_poly(2, 1),
    truncated_poly(3, 1),
    truncated_poly(1, 3),
    square_zero(1),
    square_zero(2),
]


def internal_degrees(A, p):
    top = max(A.support())
    return range(-p * top - 1, top + 2)


class HHBarTests(SimpleTestCase):
    def test_center_of_spherical_algebra(self):
        self.assertEqual(hh_bar(truncated_poly(1, 2), 0, 0).dim, 1)

    def test_no_degree_minus_one_maps(self):
        self.assertEqual(hh_bar(truncated_poly(2, 2), 3, -1).dim, 0)

    def test_euler_derivation(self):
        result = hh_bar(truncated_poly(1, 2), 1, 0, with_cocycles=True)
        self.assertEqual(result.dim, 1)
        (cocycle,) = result.cocycles
        self.assertEqual(cocycle, {((0, ('t',)), 't'): Fraction(1)})

    def test_slice_dims_reported(self):
        result = hh_bar(truncated_poly(1, 2), 1, 0)
        self.assertEqual(result.slice_dims, [1, 1, 0])
        self.assertEqual(result.as_dict()['mode'], RELATIVE)

    def test_configuration_center(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        self.assertEqual(hh_bar(A, 0, 0).dim, len(center_basis(A, 0)))
        self.assertEqual(hh_bar(A, 0, 0).dim, 1)

    def test_shifted_coefficients(self):
        A = truncated_poly(1, 2)
        M = GradedBimodule.regular(A).shift(2)
        # HH^{0,q}(A, A<2>) is HH^{0,q+2}(A, A)
        self.assertEqual(hh_bar(A, 0, -2, M=M).dim, hh_bar(A, 0, 0).dim)

    def test_word_cap(self):
        with self.assertRaises(ResourceLimitExceeded):
            hh_bar(truncated_poly(3, 1), 2, 0, max_words=1)

    def test_coboundary_squares_to_zero(self):
        for A in SMALL_ALGEBRAS + [build_configuration_algebra(ConfigGraph.path(2), 1, 2, 2)]:
            for mode in (RELATIVE, ABSOLUTE):
                if mode == ABSOLUTE and A.dim > 4:
                    continue
                top = 5 if mode == RELATIVE else 3
                for p in range(1, top):
                    for q in internal_degrees(A, p + 1):
                        with self.subTest(algebra=A.name, mode=mode, p=p, q=q):
                            lower = bar_slice(A, p - 1, q, mode=mode)
                            upper = bar_slice(A, p, q, mode=mode)
                            self.assertEqual(lower.target_basis, upper.basis)
                            self.assertTrue(upper.coboundary.matmul(lower.coboundary).is_zero())

    def test_relative_and_absolute_agree(self):
        for A in SMALL_ALGEBRAS:
            for p in range(0, 4):
                for q in internal_degrees(A, p):
                    with self.subTest(algebra=A.name, p=p, q=q):
                        self.assertEqual(
                            hh_bar(A, p, q, mode=RELATIVE).dim,
                            hh_bar(A, p, q, mode=ABSOLUTE).dim,
                        )


class ResolutionTests(SimpleTestCase):
    def test_periodic_resolution_shape(self):
        spec = periodic_resolution(2, 2, 5)
        self.assertEqual([term.shift for term in spec.terms], [0, 2, 6, 8, 12])
        self.assertTrue(validate_resolution(spec))

    def test_bar_matches_periodic_resolution(self):
        for n, k in [(1, 2), (2, 2), (1, 3), (2, 3)]:
            spec = periodic_resolution(n, k, 6)
            validate_resolution(spec)
            A = spec.algebra
            for p in range(0, 5):
                for q in internal_degrees(A, p):
                    with self.subTest(n=n, k=k, p=p, q=q):
                        self.assertEqual(hh_bar(A, p, q).dim, hh_resolution(spec, p, q, validate=False))

    def test_tail_vanishing(self):
        spec = periodic_resolution(2, 2, 6)
        # target degree 6i + 2 - 2i lies above nk = 4
        self.assertEqual(hh_resolution(spec, 4, -2), 0)

    def test_beyond_length(self):
        spec = periodic_resolution(1, 2, 3)
        with self.assertRaises(ResolutionError):
            hh_resolution(spec, 2, 0)

    def test_composite_must_vanish(self):
        A = truncated_poly(1, 2)
        plus = ((Fraction(1), 't', '1'), (Fraction(1), '1', 't'))
        spec = PeriodicResolutionSpec(A, (ResolutionTerm(0), ResolutionTerm(2, plus)))
        with self.assertRaises(ResolutionError):
            validate_resolution(spec)

    def test_non_exact_detected(self):
        A = truncated_poly(1, 2)
        u = ((Fraction(1), 't', '1'), (Fraction(-1), '1', 't'))
        spec = PeriodicResolutionSpec(A, (
            ResolutionTerm(0),
            ResolutionTerm(2, u),
            ResolutionTerm(6, ((Fraction(1), 't', 't'),)),
        ))
        with self.assertRaisesMessage(ResolutionError, 'not exact at position 1'):
            validate_resolution(spec)

    def test_serializer_round_trip(self):
        spec = periodic_resolution(1, 2, 4)
        serializer = ResolutionSerializer(data=resolution_payload(spec), context={'algebra': spec.algebra})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().terms, spec.terms)

    def test_serializer_unknown_label(self):
        A = truncated_poly(1, 2)
        data = {'terms': [{'shift': 0}, {'shift': 2, 'multiplier': [{'left': 's', 'right': '1'}]}]}
        serializer = ResolutionSerializer(data=data, context={'algebra': A})
        self.assertFalse(serializer.is_valid())


class KadeishviliScanTests(SimpleTestCase):
    def test_truncated_polynomials_vanish(self):
        for n, k in [(1, 2), (1, 4), (2, 2), (2, 3), (3, 2)]:
            with self.subTest(n=n, k=k):
                table = kadeishvili_scan(truncated_poly(n, k), 5)
                self.assertEqual(sorted(table), [3, 4, 5])
                self.assertFalse(any(table.values()))

    def test_scan_matches_resolution(self):
        spec = periodic_resolution(1, 4, 6)
        table = kadeishvili_scan(spec.algebra, 4)
        for q, dim in table.items():
            self.assertEqual(dim, hh_resolution(spec, q, 2 - q))

    def test_orthogonal_a2_configuration(self):
        A = build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        self.assertEqual(kadeishvili_scan(A, 4), {3: 0, 4: 0})

    def test_square_zero_toy(self):
        self.assertEqual(kadeishvili_scan(square_zero(1), 5), {3: 0, 4: 0, 5: 0})

    def test_threads(self):
        A = truncated_poly(2, 1)
        self.assertEqual(kadeishvili_scan(A, 5, threads=3), kadeishvili_scan(A, 5))
