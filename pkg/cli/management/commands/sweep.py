from cli.base import ReportCommand
from formality.certificates import PN_CONFIG, SINGLE, SPHERICAL
from formality.sweeps import ROW_FIELDS, sweep_pn, sweep_single, sweep_spherical


class Command(ReportCommand):
    help = 'Run a certifier over a grid of parameters; one row per grid point.'

    def add_command_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subject', required=True)

        single = subparsers.add_parser(SINGLE)
        single.add_argument('--n', type=int, nargs='*', default=[])
        single.add_argument('--k', type=int, nargs='*', default=[])

        pn = subparsers.add_parser(PN_CONFIG, help='Without --h, h = nk/2 and the gcd_ok column is filled.')
        pn.add_argument('--n', type=int, nargs='*', default=[])
        pn.add_argument('--k', type=int, nargs='*', default=[])
        pn.add_argument('--h', type=int, nargs='*')

        spherical = subparsers.add_parser(SPHERICAL, help='h window defaults to [floor(k/2), k].')
        spherical.add_argument('--k', type=int, nargs='*', default=[])
        spherical.add_argument('--hmin', type=int)
        spherical.add_argument('--hmax', type=int)

    def compute(self, subject=None, **options):
        threads = self.config.threads
        if subject == SINGLE:
            rows = sweep_single(options['n'], options['k'], threads=threads)
        elif subject == PN_CONFIG:
            rows = sweep_pn(options['n'], options['k'], options['h'], threads=threads)
        else:
            rows = sweep_spherical(options['k'], options['hmin'], options['hmax'], threads=threads)
        return {'subject': subject, 'rows': rows}

    def csv_rows(self, result):
        return list(ROW_FIELDS), result['rows']

    def render_human(self, result):
        lines = []
        for row in result['rows']:
            params = ' '.join(f'{key}={row[key]}' for key in ('n', 'k', 'h', 'h_min', 'h_max') if row[key] is not None)
            line = f"{params}: {row['verdict']}"
            if row['failed']:
                line += f" (fails {row['failed']})"
            if row['uncovered']:
                line += f" (uncovered q={row['uncovered']})"
            lines.append(line)
        return '\n'.join(lines) or 'empty grid'
