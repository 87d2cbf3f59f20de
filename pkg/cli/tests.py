import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from formalitykit.runconfig import RunConfig
from formalitykit.exceptions import InputValidationError
from formality.sweeps import ROW_FIELDS
from graded_algebra.algebras import truncated_poly
from graded_algebra.serializers import algebra_payload
from .base import flatten_errors
from .dispatch import dispatch

ODD_TRIANGLE = {
    'vertices': ['1', '2', '3'],
    'edges': [{'u': '1', 'v': '2', 'd': 1}, {'u': '2', 'v': '3', 'd': 1}, {'u': '3', 'v': '1', 'd': 1}],
}
A3_CHAIN = {
    'vertices': ['1', '2', '3'],
    'edges': [{'u': '1', 'v': '2', 'd': 1}, {'u': '2', 'v': '3', 'd': 1}],
}
A2_DEGREES = {'vertices': ['1', '2'], 'edges': [{'u': '1', 'v': '2', 'a_uv': 3, 'a_vu': 1}]}
DUAL_NUMBERS = {
    'vertices': 1,
    'generators': [{'label': 't', 'src': 0, 'tgt': 0, 'deg': 2}],
    'relations': [[{'word': ['t', 't'], 'coeff': '1'}]],
    'truncation': 18,
}


class CommandTestMixin:
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, data):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def result(self, *args):
        return json.loads(self.run_command(*args))['result']

    def exit_code(self, *args):
        with self.assertRaises(CommandError) as cm:
            self.run_command(*args)
        return cm.exception.returncode, str(cm.exception)


class RunConfigTests(SimpleTestCase):
    def test_defaults_come_from_settings(self):
        config = RunConfig.from_settings()
        self.assertEqual(str(config.field), 'rationals')
        self.assertEqual(config.max_words, 2_000_000)
        self.assertEqual(config.max_truncation, 200)

    def test_overrides_and_caps(self):
        self.assertEqual(str(RunConfig.from_settings(field='fp:7').field), 'fp:7')
        with self.assertRaises(InputValidationError):
            RunConfig.from_settings(max_words=0)
        with self.assertRaises(InputValidationError):
            RunConfig.from_settings(field='reals')

    def test_flatten_errors(self):
        detail = {'mult': ['This field is required.'], 'basis': [{}, {'degree': ['A valid integer is required.']}]}
        self.assertEqual(flatten_errors(detail), [
            'mult: This field is required.',
            'basis.1.degree: A valid integer is required.',
        ])


class CertifyCommandTests(CommandTestMixin, SimpleTestCase):
    def test_single_report(self):
        report = json.loads(self.run_command('certify', 'single', '--n', '2', '--k', '2'))
        self.assertEqual(report['tool'], 'formalitykit')
        self.assertEqual(report['command'], 'certify')
        self.assertEqual(report['input']['subject'], 'single')
        self.assertEqual((report['input']['n'], report['input']['k']), (2, 2))
        self.assertEqual(report['input']['field'], 'rationals')
        self.assertEqual(report['result']['verdict'], 'CertifiedFormal')

    def test_output_is_deterministic(self):
        args = ('certify', 'pn-config', '--n', '2', '--k', '2', '--h', '2')
        self.assertEqual(self.run_command(*args), self.run_command(*args))

    def test_report_from_code_leaves_streams_out(self):
        out, err = StringIO(), StringIO()
        call_command('certify', 'single', '--n', '1', '--k', '2', stdout=out, stderr=err)
        report = json.loads(out.getvalue())
        self.assertNotIn('stdout', report['input'])
        self.assertNotIn('stderr', report['input'])
        self.assertEqual(report['result']['verdict'], 'CertifiedFormal')

    def test_emitted_certificate_rechecks(self):
        for args in (('single', '--n', '3', '--k', '4'), ('spherical', '--k', '6', '--hmin', '3', '--hmax', '6')):
            with self.subTest(args=args):
                path = self.write('cert.json', self.run_command('certify', *args))
                result = self.result('recheck', '--cert', path)
                self.assertTrue(result['ok'], result['problems'])

    def test_tampered_certificate_is_rejected(self):
        report = json.loads(self.run_command('certify', 'pn-config', '--n', '2', '--k', '2', '--h', '2'))
        for item in report['result']['evidence']:
            if item['chain']:
                item['chain']['terms'][-1]['intercept'] -= 10
        path = self.write('cert.json', report)
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('recheck', '--cert', path, stdout=out)
        self.assertEqual(cm.exception.returncode, 1)
        self.assertFalse(json.loads(out.getvalue())['result']['ok'])

    def test_recheck_rejects_malformed_payload(self):
        path = self.write('cert.json', {'subject': 'single', 'parameters': {'n': 1}, 'verdict': 'Maybe'})
        code, message = self.exit_code('recheck', '--cert', path)
        self.assertEqual(code, 2)
        self.assertIn('verdict', message)

    def test_spherical_k5_is_inconclusive(self):
        result = self.result('certify', 'spherical', '--k', '5', '--hmin', '2', '--hmax', '5')
        self.assertEqual(result['verdict'], 'Inconclusive')
        self.assertEqual(result['uncovered'], [3])

    def test_gcd_failure_exits_zero(self):
        result = self.result('certify', 'pn-config', '--n', '3', '--k', '2', '--h', '3')
        self.assertEqual(result['verdict'], 'CriterionInapplicable')
        self.assertEqual(result['failed_hypotheses'], ['gcd(k,h) > 1'])

    def test_human_output(self):
        text = self.run_command('certify', '--format', 'human', 'pn-config', '--n', '2', '--k', '2', '--h', '2')
        self.assertIn('maxdeg(A)+q-2', text)
        self.assertIn('CertifiedFormal', text)

    def test_csv_needs_a_table(self):
        code, _ = self.exit_code('certify', '--format', 'csv', 'single', '--n', '1', '--k', '1')
        self.assertEqual(code, 2)

    def test_direct_scan_attached(self):
        result = self.result('certify', 'single', '--n', '1', '--k', '2', '--scan', '4')
        self.assertEqual(result['verdict'], 'CertifiedFormal')
        direct = [item for item in result['evidence'] if item['method'] == 'DirectHH']
        self.assertEqual([item['detail']['dim'] for item in direct], [0, 0])


class HHCommandTests(CommandTestMixin, SimpleTestCase):
    def setUp(self):
        super().setUp()
        self.dual = self.write('dual.json', algebra_payload(truncated_poly(1, 2)))

    def test_center(self):
        result = self.result('hh', '--algebra', self.dual, '--p', '0', '--q', '0')
        self.assertEqual(result['dim'], 1)
        self.assertEqual(result['engine'], 'bar')
        self.assertEqual(len(result['slice_dims']), 3)

    def test_engines_agree(self):
        for p in range(4):
            with self.subTest(p=p):
                bar = self.result('hh', '--algebra', self.dual, '--p', str(p), '--q', '0')
                resolution = self.result('hh', '--periodic', '1', '2', '--p', str(p), '--q', '0')
                self.assertEqual(bar['dim'], resolution['dim'])

    def test_shifted_coefficients(self):
        shifted = self.result('hh', '--algebra', self.dual, '--p', '0', '--q', '-2', '--shift', '2')
        self.assertEqual(shifted['dim'], self.result('hh', '--algebra', self.dual, '--p', '0', '--q', '0')['dim'])

    def test_missing_multiplication_table(self):
        junk = self.write('junk.json', {'basis': [{'label': '1', 'degree': 0}]})
        code, message = self.exit_code('hh', '--algebra', junk, '--p', '0', '--q', '0')
        self.assertEqual(code, 2)
        self.assertIn(f'{junk}: mult:', message)

    def test_malformed_json(self):
        broken = self.write('broken.json', '{"basis": [')
        code, message = self.exit_code('hh', '--algebra', broken, '--p', '0', '--q', '0')
        self.assertEqual(code, 2)
        self.assertIn(broken, message)
        self.assertIn('line 1', message)

    def test_missing_file(self):
        code, _ = self.exit_code('hh', '--algebra', os.path.join(self.tmp.name, 'nope.json'), '--p', '0', '--q', '0')
        self.assertEqual(code, 2)

    def test_word_cap(self):
        algebra = self.write('cubic.json', algebra_payload(truncated_poly(3, 1)))
        code, _ = self.exit_code('hh', '--max-words', '1', '--algebra', algebra, '--p', '2', '--q', '0')
        self.assertEqual(code, 3)

    def test_caps_must_be_positive(self):
        code, _ = self.exit_code('hh', '--max-words', '0', '--algebra', self.dual, '--p', '0', '--q', '0')
        self.assertEqual(code, 2)

    def test_needs_an_algebra(self):
        code, _ = self.exit_code('hh', '--p', '0', '--q', '0')
        self.assertEqual(code, 2)

    def test_scan(self):
        result = self.result('scan', '--algebra', self.dual, '--qmax', '4')
        self.assertEqual(result['dims'], {'3': 0, '4': 0})
        self.assertTrue(result['vanishing'])
        csv = self.run_command('scan', '--format', 'csv', '--algebra', self.dual, '--qmax', '4')
        self.assertEqual(csv.splitlines(), ['q,dim', '3,0', '4,0'])


class TorCommandTests(CommandTestMixin, SimpleTestCase):
    def test_periodic_grading(self):
        path = self.write('dual.json', DUAL_NUMBERS)
        even = self.result('tor', '--pres', path, '--q', '2')
        self.assertEqual(even['dims'], {'4': 1})
        self.assertEqual((even['nilpotence'], even['ceiling']), (2, 4))
        self.assertEqual(self.result('tor', '--pres', path, '--q', '3')['dims'], {'6': 1})

    def test_quotient(self):
        path = self.write('dual.json', DUAL_NUMBERS)
        result = self.result('tor', '--pres', path, '--q', '1', '--quotient')
        self.assertEqual(result['quotient'], {'0': 1, '2': 1})

    def test_free_algebra_is_inconclusive(self):
        path = self.write('free.json', {
            'vertices': 1, 'generators': [{'label': 't', 'src': 0, 'tgt': 0, 'deg': 1}],
            'relations': [], 'truncation': 10,
        })
        self.assertEqual(self.result('tor', '--pres', path, '--q', '2')['status'], 'inconclusive')

    def test_truncation_too_small(self):
        path = self.write('low.json', dict(DUAL_NUMBERS, truncation=4))
        code, message = self.exit_code('tor', '--pres', path, '--q', '3')
        self.assertEqual(code, 2)
        self.assertIn('increase truncation', message)

    def test_truncation_cap(self):
        path = self.write('dual.json', DUAL_NUMBERS)
        code, _ = self.exit_code('tor', '--max-truncation', '10', '--pres', path, '--q', '2')
        self.assertEqual(code, 3)

    def test_unknown_generator(self):
        path = self.write('bad.json', dict(DUAL_NUMBERS, relations=[[{'word': ['s', 's']}]]))
        code, message = self.exit_code('tor', '--pres', path, '--q', '2')
        self.assertEqual(code, 2)
        self.assertIn('relations', message)


class ConfigurationCommandTests(CommandTestMixin, SimpleTestCase):
    def test_normalize(self):
        result = self.result('normalize', '--graph', self.write('a2.json', A2_DEGREES), '--nk', '4')
        self.assertEqual(result['shifts'], {'1': 0, '2': 1})
        self.assertFalse(result['extension'])

    def test_normalize_serre_violation(self):
        graph = {'vertices': ['1', '2'], 'edges': [{'u': '1', 'v': '2', 'a_uv': 3, 'a_vu': 2}]}
        code, _ = self.exit_code('normalize', '--graph', self.write('bad.json', graph), '--nk', '4')
        self.assertEqual(code, 2)

    def test_odd_triangle_has_no_signs(self):
        result = self.result('signs', '--graph', self.write('odd3cycle.json', ODD_TRIANGLE))
        self.assertFalse(result['feasible'])
        self.assertEqual(sorted(result['witness']), ['1', '2', '3'])
        self.assertTrue(result['extension'])

    def test_chain_signs_and_induced_configuration(self):
        result = self.result('signs', '--graph', self.write('a3.json', A3_CHAIN), '--induce', '2')
        signs = result['signs']
        self.assertEqual(signs['1'] * signs['2'], -1)
        self.assertEqual(signs['2'] * signs['3'], -1)
        self.assertEqual(result['induced']['edges'], {'1-2': {'2': 1}, '2-3': {'2': 1}})

    def test_kunneth_table(self):
        path = self.write('odd.json', {'components': [{'degree': 1, 'dim': 1}]})
        self.assertEqual(self.result('kunneth', '--poincare', path, '--n', '2', '--same')['hom'], {})
        self.assertEqual(self.result('kunneth', '--poincare', path, '--n', '2', '--different')['hom'], {'2': 1})

    def test_kunneth_small_characteristic(self):
        path = self.write('odd.json', {'components': [{'degree': 1, 'dim': 1}]})
        code, _ = self.exit_code('kunneth', '--field', 'fp:2', '--poincare', path, '--n', '2', '--same')
        self.assertEqual(code, 2)

    def test_build_config(self):
        result = self.result('build_config', '--n', '2', '--k', '2', '--h', '2', '--presentation')
        self.assertEqual(result['dim'], 8)
        self.assertEqual(len(result['presentation']['generators']), 4)
        zigzag = self.result('build_config', '--n', '2', '--k', '2', '--h', '2', '--preset', 'zigzag')
        self.assertEqual(zigzag['dim'], 8)


class SweepCommandTests(CommandTestMixin, SimpleTestCase):
    def test_spherical_rows(self):
        result = self.result('sweep', 'spherical', '--k', '2', '3', '4', '5', '6')
        self.assertEqual(
            [row['verdict'] for row in result['rows']],
            ['CriterionInapplicable', 'CriterionInapplicable', 'CertifiedFormal', 'Inconclusive', 'CertifiedFormal'],
        )

    def test_cy_grid(self):
        rows = self.result('sweep', 'pn-config', '--n', '1', '2', '3', '4', '--k', '2', '4')['rows']
        self.assertEqual(len(rows), 8)
        for row in rows:
            self.assertEqual(row['gcd_ok'], row['n'] % 2 == 0 or row['k'] % 4 == 0)

    def test_empty_grid(self):
        self.assertEqual(self.result('sweep', 'pn-config')['rows'], [])

    def test_csv(self):
        lines = self.run_command('sweep', '--format', 'csv', 'pn-config', '--n', '1', '2', '--k', '2').splitlines()
        self.assertEqual(lines[0], ','.join(ROW_FIELDS))
        self.assertEqual(len(lines), 3)


class ArchiveCommandTests(CommandTestMixin, TestCase):
    def test_save_and_recheck_record(self):
        result = self.result('certify', 'pn-config', '--n', '2', '--k', '2', '--h', '2', '--save')
        replay = self.result('recheck', '--record', str(result['record']))
        self.assertTrue(replay['ok'], replay['problems'])
        self.assertEqual(replay['verdict'], 'CertifiedFormal')

    def test_unknown_record(self):
        code, _ = self.exit_code('recheck', '--record', '9999')
        self.assertEqual(code, 2)


class DispatchTests(CommandTestMixin, TestCase):
    def dispatch(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = dispatch(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_certify(self):
        code, out, _ = self.dispatch('certify', 'single', '--n', '2', '--k', '2')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['result']['verdict'], 'CertifiedFormal')

    def test_certify_is_byte_stable(self):
        argv = ('certify', 'spherical', '--k', '6', '--hmin', '3', '--hmax', '6')
        first, second = self.dispatch(*argv), self.dispatch(*argv)
        self.assertEqual(first[0], 0)
        self.assertEqual(first[1], second[1])
        self.assertEqual(json.loads(first[1]), json.loads(self.run_command(*argv)))

    def test_infeasible_signs_exit_zero(self):
        code, out, _ = self.dispatch('signs', '--graph', self.write('odd3cycle.json', ODD_TRIANGLE))
        self.assertEqual(code, 0)
        self.assertFalse(json.loads(out)['result']['feasible'])

    def test_validation_error(self):
        junk = self.write('junk.json', {'basis': [{'label': '1', 'degree': 0}]})
        code, out, err = self.dispatch('hh', '--algebra', junk, '--p', '0', '--q', '0')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('mult', err)

    def test_resource_limit(self):
        algebra = self.write('cubic.json', algebra_payload(truncated_poly(3, 1)))
        code, _, _ = self.dispatch('hh', '--max-words', '1', '--algebra', algebra, '--p', '2', '--q', '0')
        self.assertEqual(code, 3)

    def test_usage_errors(self):
        self.assertEqual(self.dispatch('bogus')[0], 2)
        self.assertEqual(self.dispatch()[0], 2)
        self.assertEqual(self.dispatch('hh', '--p', 'x', '--q', '0')[0], 2)

    def test_dashed_command_name(self):
        code, out, _ = self.dispatch('build-config', '--n', '1', '--k', '2', '--h', '1')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['command'], 'build_config')
