from django.core.management.base import CommandError

from cli.base import ReportCommand
from configurations.graphs import ConfigGraph
from configurations.serializers import GraphSerializer
from formality.certificates import (
    PN_CONFIG,
    SINGLE,
    SPHERICAL,
    attach_direct_scan,
    certify_config_pn,
    certify_config_spherical,
    certify_single,
    render_human,
)
from formality.serializers import archive
from formalitykit.exceptions import EXIT_INVALID
from graded_algebra.algebras import (
    ORTHOGONAL,
    PRESET_ASSUMPTION,
    PRESETS,
    build_configuration_algebra,
    truncated_poly,
)
from .hh import MODE_NAMES


class Command(ReportCommand):
    help = 'Emit a formality certificate for a single object or a configuration.'

    def add_command_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subject', required=True)

        single = subparsers.add_parser(SINGLE, help='k[t]/t^{n+1}, deg t = k.')
        single.add_argument('--n', type=int, required=True)
        single.add_argument('--k', type=int, required=True)

        pn = subparsers.add_parser(PN_CONFIG, help='Configuration of P^n[k]-objects with hom-degree h.')
        pn.add_argument('--n', type=int, required=True)
        pn.add_argument('--k', type=int, required=True)
        pn.add_argument('--h', type=int, required=True)
        pn.add_argument('--graph', help='Graph JSON for --scan; defaults to two vertices and one edge.')
        pn.add_argument('--preset', choices=PRESETS, default=ORTHOGONAL)

        spherical = subparsers.add_parser(SPHERICAL, help='Spherelike configuration, h in [hmin, hmax].')
        spherical.add_argument('--k', type=int, required=True)
        spherical.add_argument('--hmin', type=int, required=True)
        spherical.add_argument('--hmax', type=int, required=True)
        spherical.add_argument('--graph', help='Graph JSON for --scan; defaults to two vertices and one edge.')

        for sub in (single, pn, spherical):
            sub.add_argument('--save', action='store_true', help='Archive the certificate in the database.')
            sub.add_argument('--scan', type=int, metavar='QMAX', help='Attach a direct scan up to QMAX.')
            sub.add_argument('--mode', choices=sorted(MODE_NAMES), default='relative')

    def compute(self, subject=None, scan=None, save=False, mode='relative', **options):
        if subject == SINGLE:
            certificate = certify_single(options['n'], options['k'])
        elif subject == PN_CONFIG:
            certificate = certify_config_pn(options['n'], options['k'], options['h'])
        else:
            certificate = certify_config_spherical(options['k'], options['hmin'], options['hmax'])
        if scan is not None:
            algebra = self.scan_algebra(subject, options)
            attach_direct_scan(
                certificate, algebra, scan, mode=MODE_NAMES[mode],
                max_words=self.config.max_words, threads=self.config.threads,
            )
            if subject != SINGLE:
                certificate.remarks.append(f"direct scan under the preset assumption {PRESET_ASSUMPTION}")
        self.certificate = certificate
        result = certificate.as_dict()
        if save:
            result['record'] = archive(certificate).pk
        return result

    def scan_algebra(self, subject, options):
        field = self.config.field
        if subject == SINGLE:
            return truncated_poly(options['n'], options['k'], field)
        graph = self.read(options['graph'], GraphSerializer) if options.get('graph') else ConfigGraph.path(2)
        if subject == PN_CONFIG:
            return build_configuration_algebra(
                graph, options['n'], options['k'], options['h'], options['preset'], field,
            )
        k = options['k']
        if k < 1:
            raise CommandError('--scan needs a positive k.', returncode=EXIT_INVALID)
        return build_configuration_algebra(graph, 1, k, k // 2 or 1, ORTHOGONAL, field)

    def render_human(self, result):
        text = render_human(self.certificate)
        if 'record' in result:
            text += f"\n  archived as record {result['record']}"
        return text
