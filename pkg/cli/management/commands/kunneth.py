from cli.base import ReportCommand
from configurations.kunneth import EXTERIOR, SYMMETRIC, kunneth_hom
from configurations.serializers import PoincareSerializer


class Command(ReportCommand):
    help = 'Graded dimensions of Hom between n-th powers: S^n or Lambda^n of a Poincare polynomial.'

    def add_command_arguments(self, parser):
        parser.add_argument('--poincare', required=True, help='Poincare JSON: {"components": [{"degree", "dim"}]}.')
        parser.add_argument('--n', type=int, required=True)
        linearization = parser.add_mutually_exclusive_group(required=True)
        linearization.add_argument('--same', dest='same', action='store_true')
        linearization.add_argument('--different', dest='same', action='store_false')

    def compute(self, poincare=None, n=0, same=True, **options):
        P = self.read(poincare, PoincareSerializer)
        power = kunneth_hom(P, n, same, self.config.field)
        return {
            'n': n,
            'kind': SYMMETRIC if same else EXTERIOR,
            'poincare': P.as_dict(),
            'hom': power.as_dict(),
        }

    def csv_rows(self, result):
        return ['degree', 'dim'], [{'degree': d, 'dim': dim} for d, dim in result['hom'].items()]

    def render_human(self, result):
        parts = ' + '.join(f'{dim}*k[{-int(d)}]' for d, dim in result['hom'].items()) or '0'
        return f"{result['kind']} power {result['n']}: {parts}"
