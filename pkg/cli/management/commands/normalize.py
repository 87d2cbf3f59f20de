from cli.base import ReportCommand
from configurations.normalization import normalize_shifts
from configurations.serializers import GraphSerializer


class Command(ReportCommand):
    help = 'Shifts that make every hom-degree of a configuration equal to nk/2.'

    def add_command_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='Graph JSON with a_uv and a_vu on every edge.')
        parser.add_argument('--nk', type=int, required=True)

    def compute(self, graph=None, nk=0, **options):
        g = self.read(graph, GraphSerializer)
        result = normalize_shifts(g, nk).as_dict()
        # cycles go beyond the tree case
        result['extension'] = not g.is_tree()
        return result

    def render_human(self, result):
        if not result['feasible']:
            return f"infeasible: cycle {' '.join(result['witness'])} has holonomy {result['holonomy']}"
        shifts = ', '.join(f'{v}: {n}' for v, n in result['shifts'].items())
        return f"h = {result['h']}; shifts {shifts}"
