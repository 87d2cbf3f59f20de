from django.core.management.base import CommandError

from cli.base import ReportCommand
from formalitykit.exceptions import EXIT_INVALID
from graded_algebra.bimodules import GradedBimodule
from graded_algebra.serializers import AlgebraSerializer
from hochschild.bar import ABSOLUTE, RELATIVE, hh_bar
from hochschild.resolutions import hh_resolution, periodic_resolution
from hochschild.serializers import ResolutionSerializer

MODE_NAMES = {'relative': RELATIVE, RELATIVE: RELATIVE, ABSOLUTE: ABSOLUTE}


class Command(ReportCommand):
    help = 'Dimension of HH^{p,q}(A, A<shift>) from the bar complex or a periodic resolution.'

    def add_command_arguments(self, parser):
        parser.add_argument('--algebra', help='Algebra JSON file.')
        parser.add_argument('--p', type=int, required=True, help='Hochschild degree.')
        parser.add_argument('--q', type=int, required=True, help='Internal degree.')
        parser.add_argument('--mode', choices=sorted(MODE_NAMES), default='relative')
        parser.add_argument('--shift', type=int, default=0, help='Coefficients in A<shift>.')
        parser.add_argument('--resolution', help='Resolution JSON file over the algebra.')
        parser.add_argument(
            '--periodic', type=int, nargs=2, metavar=('N', 'K'),
            help='Use k[t]/t^{N+1}, deg t = K, with its 2-periodic resolution.',
        )

    def compute(self, algebra=None, p=0, q=0, mode='relative', shift=0, resolution=None, periodic=None, **options):
        if periodic:
            spec = periodic_resolution(*periodic, length=p + 2, field=self.config.field)
            A = spec.algebra
        elif algebra:
            A = self.read(algebra, AlgebraSerializer)
            spec = self.read(resolution, ResolutionSerializer, algebra=A) if resolution else None
        else:
            raise CommandError('hh needs --algebra or --periodic.', returncode=EXIT_INVALID)
        M = GradedBimodule.regular(A).shift(shift) if shift else None
        if spec is not None:
            return {'p': p, 'q': q, 'dim': hh_resolution(spec, p, q, M), 'engine': 'resolution'}
        result = hh_bar(A, p, q, M, mode=MODE_NAMES[mode], max_words=self.config.max_words).as_dict()
        result['engine'] = 'bar'
        return result

    def render_human(self, result):
        return f"dim HH^{{{result['p']},{result['q']}}} = {result['dim']} ({result['engine']})"
