from cli.base import ReportCommand
from graded_algebra.serializers import AlgebraSerializer
from hochschild.scan import kadeishvili_scan
from .hh import MODE_NAMES


class Command(ReportCommand):
    help = 'Kadeishvili obstruction scan: dim HH^{q,2-q}(A) for 3 <= q <= qmax.'

    def add_command_arguments(self, parser):
        parser.add_argument('--algebra', required=True, help='Algebra JSON file.')
        parser.add_argument('--qmax', type=int, required=True)
        parser.add_argument('--mode', choices=sorted(MODE_NAMES), default='relative')

    def compute(self, algebra=None, qmax=3, mode='relative', **options):
        A = self.read(algebra, AlgebraSerializer)
        table = kadeishvili_scan(
            A, qmax, mode=MODE_NAMES[mode], max_words=self.config.max_words, threads=self.config.threads,
        )
        return {
            'q_max': qmax,
            'mode': MODE_NAMES[mode],
            'dims': {str(q): dim for q, dim in table.items()},
            'vanishing': not any(table.values()),
        }

    def csv_rows(self, result):
        return ['q', 'dim'], [{'q': q, 'dim': dim} for q, dim in result['dims'].items()]

    def render_human(self, result):
        lines = [f"HH^{{{q},{2 - int(q)}}}: {dim}" for q, dim in result['dims'].items()]
        lines.append('all zero' if result['vanishing'] else 'obstruction space nonzero')
        return '\n'.join(lines)
