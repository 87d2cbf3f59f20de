from django.core.management.base import CommandError

from cli.base import ReportCommand, flatten_errors, load_json
from formality.models import CertificateRecord
from formality.recheck import recheck
from formality.serializers import CertificatePayloadSerializer
from formalitykit.exceptions import EXIT_INTERNAL, EXIT_INVALID


class Command(ReportCommand):
    help = 'Replay the evidence of a certificate file or an archived record.'

    def add_command_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--cert', help='Certificate JSON file (a report of certify or its result).')
        source.add_argument('--record', type=int, help='Id of an archived certificate.')
        parser.add_argument('--replay-direct', action='store_true', help='Recompute DirectHH items.')

    def compute(self, cert=None, record=None, replay_direct=False, **options):
        if cert:
            payload = load_json(cert)
            self.inputs[cert] = payload
            where = cert
            if isinstance(payload, dict) and 'result' in payload and 'tool' in payload:
                payload = payload['result']
        else:
            try:
                payload = CertificateRecord.objects.get(pk=record).payload
            except CertificateRecord.DoesNotExist:
                raise CommandError(f'No archived certificate with id {record}.', returncode=EXIT_INVALID)
            where = f'record {record}'
        serializer = CertificatePayloadSerializer(data=payload)
        if not serializer.is_valid():
            lines = [f'{where}: {line}' for line in flatten_errors(serializer.errors)]
            raise CommandError('\n'.join(lines), returncode=EXIT_INVALID)
        return recheck(serializer.validated_data, replay_direct=replay_direct).as_dict()

    def after_output(self, result):
        if not result['ok']:
            raise CommandError(f"certificate rejected: {len(result['problems'])} problem(s)", returncode=EXIT_INTERNAL)

    def render_human(self, result):
        lines = [f"{'ok' if result['ok'] else 'REJECTED'}: {result['verdict']}, {result['checked']} items checked"]
        lines.extend(f'  {problem}' for problem in result['problems'])
        return '\n'.join(lines)
