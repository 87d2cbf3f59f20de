from cli.base import ReportCommand
from configurations.kunneth import induced_tree
from configurations.serializers import GraphSerializer
from configurations.signs import sign_assignment


class Command(ReportCommand):
    help = 'Linearization signs with e_u e_v = (-1)^d on every edge, or a violating cycle.'

    def add_command_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='Graph JSON with d on every edge.')
        parser.add_argument('--induce', type=int, metavar='N', help='Also report the configuration of N-th powers.')
        parser.add_argument('--sphere-degree', type=int, metavar='K', help='Vertex objects are K-spherelike.')

    def compute(self, graph=None, induce=None, sphere_degree=None, **options):
        g = self.read(graph, GraphSerializer)
        result = sign_assignment(g).as_dict()
        result['extension'] = not g.is_tree()
        if induce is not None:
            result['induced'] = induced_tree(g, induce, sphere_degree).as_dict()
        return result

    def render_human(self, result):
        if not result['feasible']:
            return f"infeasible: odd cycle {' '.join(result['witness'])}"
        return 'signs ' + ', '.join(f'{v}: {s:+d}' for v, s in result['signs'].items())
