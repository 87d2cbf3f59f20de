from cli.base import ReportCommand
from configurations.graphs import ConfigGraph
from configurations.serializers import GraphSerializer
from graded_algebra.algebras import ORTHOGONAL, PRESET_ASSUMPTION, PRESETS, build_configuration_algebra
from graded_algebra.serializers import algebra_payload
from presentations.tensor import configuration_presentation
from presentations.serializers import presentation_payload
from presentations.tor import quotient_dims


class Command(ReportCommand):
    help = 'Endomorphism algebra (and optionally its tensor presentation) of a preset configuration.'

    def add_command_arguments(self, parser):
        parser.add_argument('--graph', help='Graph JSON; defaults to the path on --vertices vertices.')
        parser.add_argument('--vertices', type=int, default=2)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--h', type=int, required=True)
        parser.add_argument('--preset', choices=PRESETS, default=ORTHOGONAL)
        parser.add_argument('--presentation', action='store_true', help='Also emit the tensor presentation.')
        parser.add_argument('--truncation', type=int, help='Truncation degree of the presentation.')

    def compute(self, graph=None, vertices=2, n=1, k=1, h=1, preset=ORTHOGONAL, presentation=False,
                truncation=None, **options):
        g = self.read(graph, GraphSerializer) if graph else ConfigGraph.path(vertices)
        A = build_configuration_algebra(g, n, k, h, preset, self.config.field)
        result = {'dim': A.dim, 'algebra': algebra_payload(A), 'assumptions': [PRESET_ASSUMPTION]}
        if presentation:
            pres = configuration_presentation(
                g, n, k, h, preset, truncation, self.config.field, max_truncation=self.config.max_truncation,
            )
            # cross-checked against A degree by degree
            quotient_dims(pres, algebra=A)
            result['presentation'] = presentation_payload(pres)
        return result

    def render_human(self, result):
        algebra = result['algebra']
        lines = [f"{algebra['name'] or 'configuration algebra'}: dim {result['dim']}"]
        lines.extend(f"  {b['label']} (deg {b['degree']})" for b in algebra['basis'])
        if 'presentation' in result:
            pres = result['presentation']
            lines.append(f"  presentation: {len(pres['generators'])} generators, "
                         f"{len(pres['relations'])} relations, truncation {pres['truncation']}")
        return '\n'.join(lines)
