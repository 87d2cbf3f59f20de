from cli.base import ReportCommand
from presentations.ideals import generated_ideal
from presentations.serializers import PresentationSerializer
from presentations.tor import nilpotence_index, quotient_dims, tor_degree_ceiling, tor_term


class Command(ReportCommand):
    help = 'Graded dimensions of Tor_q(R, R) over T(V)/I from a tensor presentation.'

    def add_command_arguments(self, parser):
        parser.add_argument('--pres', required=True, help='Presentation JSON file.')
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--quotient', action='store_true', help='Also report the dimensions of T(V)/I.')

    def compute(self, pres=None, q=0, quotient=False, **options):
        presentation = self.read(pres, PresentationSerializer)
        ideal = generated_ideal(presentation)
        result = {'q': q, 'truncation': presentation.truncation}
        if q >= 2:
            N = nilpotence_index(presentation, ideal)
            result['nilpotence'] = N
            result['ceiling'] = tor_degree_ceiling(presentation, q, N)
        space = tor_term(presentation, q, ideal)
        dims = space.dims()
        result['dims'] = {str(d): dims[d] for d in sorted(dims)}
        result['mindeg'] = min(dims) if dims else None
        if quotient:
            quotient_table = quotient_dims(presentation, ideal)
            result['quotient'] = {str(d): quotient_table[d] for d in sorted(quotient_table)}
        return result

    def csv_rows(self, result):
        if 'dims' not in result:
            return None
        return ['degree', 'dim'], [{'degree': d, 'dim': dim} for d, dim in result['dims'].items()]

    def render_human(self, result):
        if 'dims' not in result:
            return f"inconclusive: {result['reason']}"
        parts = ', '.join(f'{dim} in degree {d}' for d, dim in result['dims'].items()) or 'zero'
        return f"Tor_{result['q']}: {parts}"
