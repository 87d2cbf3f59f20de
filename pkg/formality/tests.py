import json

from django.test import SimpleTestCase, TestCase
from hypothesis import given, seed, settings, strategies as st

from configurations.graphs import ConfigGraph
from formalitykit.exceptions import InputValidationError
from graded_algebra.algebras import ORTHOGONAL, build_configuration_algebra
from hochschild.scan import kadeishvili_scan
from .certificates import (
    CERTIFIED,
    DEGREE_BOUND,
    DIRECT_HH,
    GCD_DIVISIBILITY,
    INAPPLICABLE,
    INCONCLUSIVE,
    PERIODIC_RESOLUTION,
    SMALL_K_REMARK,
    attach_direct_scan,
    certify_config_pn,
    certify_config_spherical,
    certify_single,
    cy_normalize,
    render_human,
)
from .chains import STRICT, WEAK, AffineChain, link_relation
from .models import CertificateRecord
from .recheck import recheck
from .serializers import CertificatePayloadSerializer, archive
from .sweeps import sweep_pn, sweep_single, sweep_spherical
from presentations.tor import EVEN, ODD, AffineForm


def as_json(certificate):
    return json.loads(json.dumps(certificate.as_dict(), sort_keys=True))


def tail(certificate, method, parity):
    (item,) = [e for e in certificate.evidence if e.method == method and e.parity == parity]
    return item


def valid_pn(max_n=5, max_k=6):
    for n in range(2, max_n + 1):
        for k in range(2, max_k + 1):
            for h in range((n * k + 1) // 2, n * k + 1):
                certificate = certify_config_pn(n, k, h)
                if certificate.verdict != INAPPLICABLE:
                    yield certificate


class ChainTests(SimpleTestCase):
    def test_link_relation(self):
        self.assertEqual(link_relation(AffineForm(2, 0), AffineForm(3, 0), 1), STRICT)
        self.assertEqual(link_relation(AffineForm(2, 1), AffineForm(3, 0), 1), WEAK)
        self.assertIsNone(link_relation(AffineForm(2, 5), AffineForm(3, 0), 1))
        self.assertIsNone(link_relation(AffineForm(3, 0), AffineForm(2, 10), 1))

    def test_chain_needs_a_strict_link(self):
        chain = AffineChain.build([('a', AffineForm(1, 0)), ('b', AffineForm(1, 0))], 1)
        self.assertFalse(chain.proven)
        chain = AffineChain.build([('a', AffineForm(1, 0)), ('b', AffineForm(1, 1))], 1)
        self.assertTrue(chain.proven)
        self.assertEqual(AffineChain.from_dict(chain.as_dict()), chain)


class CertifySingleTests(SimpleTestCase):
    def test_all_small_parameters(self):
        for n in range(1, 7):
            for k in range(1, 7):
                with self.subTest(n=n, k=k):
                    certificate = certify_single(n, k)
                    self.assertEqual(certificate.verdict, CERTIFIED)
                    report = recheck(as_json(certificate))
                    self.assertTrue(report.ok, report.problems)

    def test_target_degree_example(self):
        item = tail(certify_single(2, 2), PERIODIC_RESOLUTION, EVEN)
        self.assertEqual(item.chain.p0, 2)
        self.assertEqual(item.chain.instantiate(2), [4, 10])

    def test_mirrored_mode(self):
        certificate = certify_single(2, -2)
        self.assertTrue(certificate.experimental)
        self.assertEqual(certificate.verdict, CERTIFIED)
        self.assertTrue(recheck(as_json(certificate)).ok)

    def test_bad_parameters(self):
        with self.assertRaises(InputValidationError):
            certify_single(0, 2)


class CertifyPnTests(SimpleTestCase):
    def test_a2_example(self):
        certificate = certify_config_pn(2, 2, 2)
        self.assertEqual(certificate.verdict, CERTIFIED)
        odd = tail(certificate, DEGREE_BOUND, ODD)
        self.assertEqual(odd.q_from, 5)
        self.assertEqual(odd.chain.instantiate(2), [7, 7, 8, 10])
        self.assertEqual(odd.chain.relations, (WEAK, STRICT, STRICT))
        even = tail(certificate, DEGREE_BOUND, EVEN)
        self.assertEqual(even.chain.instantiate(2), [6, 6, 8, 8])
        (gcd_item,) = [e for e in certificate.evidence if e.method == GCD_DIVISIBILITY]
        self.assertEqual((gcd_item.q_from, gcd_item.q_to, gcd_item.detail['gcd']), (3, 3, 2))

    def test_gcd_failure(self):
        certificate = certify_config_pn(3, 2, 3)
        self.assertEqual(certificate.verdict, INAPPLICABLE)
        self.assertEqual(certificate.failed_hypotheses, ['gcd(k,h) > 1'])
        self.assertTrue(recheck(as_json(certificate)).ok)

    def test_window_failures(self):
        self.assertIn('nk/2 <= h <= nk', certify_config_pn(2, 2, 1).failed_hypotheses)
        self.assertIn('n >= 2', certify_config_pn(1, 2, 2).failed_hypotheses)
        self.assertIn('k and h nonzero of the same sign', certify_config_pn(2, 2, -2).failed_hypotheses)

    def test_every_valid_point_rechecks(self):
        for certificate in valid_pn():
            with self.subTest(**certificate.parameters):
                self.assertEqual(certificate.verdict, CERTIFIED)
                report = recheck(as_json(certificate))
                self.assertTrue(report.ok, report.problems)

    def test_chains_hold_pointwise(self):
        compare = {STRICT: lambda a, b: a < b, WEAK: lambda a, b: a <= b}
        for certificate in valid_pn(max_n=4, max_k=4):
            for item in certificate.evidence:
                if item.chain is None:
                    continue
                for p in range(item.chain.p0, 11):
                    values = item.chain.instantiate(p)
                    for i, relation in enumerate(item.chain.relations):
                        self.assertTrue(compare[relation](values[i], values[i + 1]))

    def test_mirrored_mode(self):
        certificate = certify_config_pn(2, -2, -2)
        self.assertTrue(certificate.experimental)
        self.assertEqual(certificate.verdict, CERTIFIED)
        self.assertTrue(recheck(as_json(certificate)).ok)

    def test_single_vertex_agreement(self):
        for n in range(2, 5):
            for k in range(2, 5):
                cy = cy_normalize(n, k) if (n * k) % 2 == 0 else None
                if cy is None or not cy.gcd_ok:
                    continue
                with self.subTest(n=n, k=k):
                    self.assertEqual(certify_config_pn(n, k, cy.h).verdict, certify_single(n, k).verdict)

    def test_scan_agrees_on_a2(self):
        self.assertEqual(certify_config_pn(2, 2, 2).verdict, CERTIFIED)
        A = build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        self.assertEqual(kadeishvili_scan(A, 4), {3: 0, 4: 0})


class CertifySphericalTests(SimpleTestCase):
    def test_certified_cases(self):
        for k in (4, 6, 7, 8):
            with self.subTest(k=k):
                certificate = certify_config_spherical(k, k // 2, k)
                self.assertEqual(certificate.verdict, CERTIFIED)
                self.assertTrue(recheck(as_json(certificate)).ok)

    def test_k5_leaves_q3_uncovered(self):
        certificate = certify_config_spherical(5, 2, 5)
        self.assertEqual(certificate.verdict, INCONCLUSIVE)
        self.assertEqual(certificate.uncovered, [3])
        self.assertEqual(tail(certificate, DEGREE_BOUND, ODD).q_from, 5)
        self.assertTrue(recheck(as_json(certificate)).ok)

    def test_odd_instance_k6(self):
        item = tail(certify_config_spherical(6, 3, 6), DEGREE_BOUND, ODD)
        self.assertEqual(item.chain.instantiate(1), [7, 8, 9])

    def test_small_k(self):
        for k in (2, 3):
            certificate = certify_config_spherical(k, k // 2, k)
            self.assertEqual(certificate.verdict, INAPPLICABLE)
            self.assertIn('k >= 4', certificate.failed_hypotheses)
            self.assertIn(SMALL_K_REMARK, certificate.remarks)

    def test_only_k5_at_h2_is_open(self):
        open_cases = {
            (k, lo)
            for k in range(4, 11)
            for lo in range(k // 2, k + 1)
            for hi in range(lo, k + 1)
            if certify_config_spherical(k, lo, hi).verdict != CERTIFIED
        }
        self.assertEqual(open_cases, {(5, 2)})

    def test_k5_with_larger_h_min(self):
        certificate = certify_config_spherical(5, 3, 5)
        self.assertEqual(certificate.verdict, CERTIFIED)
        self.assertEqual(certificate.uncovered, [])
        item = tail(certificate, DEGREE_BOUND, ODD)
        self.assertEqual(item.q_from, 3)
        self.assertEqual(item.chain.instantiate(1), [6, 8, 9])
        self.assertTrue(recheck(as_json(certificate)).ok)

    def test_recheck_uses_h_min(self):
        payload = as_json(certify_config_spherical(5, 3, 5))
        payload['parameters']['h_min'] = 2
        self.assertFalse(recheck(payload).ok)


class CYNormalizeTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual((cy_normalize(2, 2).h, cy_normalize(2, 2).gcd_ok), (2, True))
        self.assertEqual((cy_normalize(3, 4).h, cy_normalize(3, 4).gcd_ok), (6, True))
        self.assertEqual((cy_normalize(3, 2).h, cy_normalize(3, 2).gcd_ok), (3, False))

    def test_odd_product(self):
        with self.assertRaises(InputValidationError):
            cy_normalize(3, 3)

    @seed(5)
    @settings(deadline=None)
    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=2, max_value=40))
    def test_parity_rule_is_sufficient(self, n, k):
        if (n * k) % 2:
            return
        cy = cy_normalize(n, k)
        if cy.parity_rule:
            self.assertTrue(cy.gcd_ok)


class RecheckTests(SimpleTestCase):
    def test_tampered_chain(self):
        payload = as_json(certify_config_pn(2, 2, 2))
        for item in payload['evidence']:
            if item['chain']:
                item['chain']['terms'][0]['intercept'] += 5
        self.assertFalse(recheck(payload).ok)

    def test_overclaimed_verdict(self):
        payload = as_json(certify_config_spherical(5, 2, 5))
        payload['verdict'] = CERTIFIED
        report = recheck(payload)
        self.assertIn('coverage: q=3 is not covered', report.problems)

    def test_hidden_hypothesis_failure(self):
        payload = as_json(certify_config_pn(2, 2, 2))
        payload['parameters']['h'] = 3
        self.assertFalse(recheck(payload).ok)

    def test_direct_scan_replay(self):
        certificate = certify_config_pn(2, 2, 2)
        A = build_configuration_algebra(ConfigGraph.path(2), 2, 2, 2, ORTHOGONAL)
        attach_direct_scan(certificate, A, 4)
        direct = [e for e in certificate.evidence if e.method == DIRECT_HH]
        self.assertEqual([(e.q_from, e.detail['dim']) for e in direct], [(3, 0), (4, 0)])
        payload = as_json(certificate)
        serializer = CertificatePayloadSerializer(data=payload)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        report = recheck(serializer.validated_data, replay_direct=True)
        self.assertTrue(report.ok, report.problems)
        payload['evidence'][-1]['detail']['dim'] = 1
        self.assertFalse(recheck(payload, replay_direct=True).ok)

    def test_payload_shape(self):
        payload = as_json(certify_single(1, 2))
        del payload['parameters']['k']
        self.assertFalse(CertificatePayloadSerializer(data=payload).is_valid())

    def test_human_rendering(self):
        text = render_human(certify_config_pn(2, 2, 2))
        self.assertIn('maxdeg(A)+q-2', text)
        self.assertIn('CertifiedFormal', text)
        self.assertIn('uncovered: q=3', render_human(certify_config_spherical(5, 2, 5)))


class SweepTests(SimpleTestCase):
    def test_cy_grid(self):
        rows = sweep_pn(range(1, 5), [2, 4])
        self.assertEqual(len(rows), 8)
        for row in rows:
            with self.subTest(n=row['n'], k=row['k']):
                self.assertEqual(row['gcd_ok'], row['n'] % 2 == 0 or row['k'] % 4 == 0)
                self.assertEqual(row['verdict'] == CERTIFIED, row['n'] >= 2 and row['gcd_ok'])

    def test_empty_grid(self):
        self.assertEqual(sweep_pn([], [2]), [])
        self.assertEqual(sweep_spherical([]), [])

    def test_spherical_rows(self):
        rows = sweep_spherical(range(2, 7))
        self.assertEqual([row['k'] for row in rows], [2, 3, 4, 5, 6])
        self.assertEqual(
            [row['verdict'] for row in rows],
            [INAPPLICABLE, INAPPLICABLE, CERTIFIED, INCONCLUSIVE, CERTIFIED],
        )
        self.assertEqual(rows[3]['uncovered'], '3')
        self.assertEqual(sweep_spherical(range(2, 7), threads=3), rows)

    def test_odd_product_row(self):
        (row,) = sweep_pn([1], [3])
        self.assertEqual(row['verdict'], INAPPLICABLE)
        self.assertIn('odd', row['failed'])

    def test_single_rows_are_sorted(self):
        rows = sweep_single([2, 1], [3, 1])
        self.assertEqual([(row['n'], row['k']) for row in rows], [(1, 1), (1, 3), (2, 1), (2, 3)])


class CertificateArchiveTests(TestCase):
    def test_archive_and_replay(self):
        record = archive(certify_config_pn(2, 2, 2))
        stored = CertificateRecord.objects.get(pk=record.pk)
        self.assertEqual(stored.verdict, CERTIFIED)
        self.assertEqual(stored.parameters, {'n': 2, 'k': 2, 'h': 2})
        self.assertTrue(recheck(stored.payload).ok)
        self.assertEqual(str(stored), 'pn-config n=2 k=2 h=2: CertifiedFormal')
