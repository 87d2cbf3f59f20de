import csv
import io
import json
import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from formalitykit.exceptions import EXIT_INVALID, FormalityKitError, Inconclusive, exit_code_for
from formalitykit.runconfig import OUTPUT_FORMATS, RunConfig
from formalitykit.version import TOOL_NAME, __version__

logger = logging.getLogger(__name__)

# options every management command carries, plus the streams call_command passes; not part of the input echo
DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks', 'stdout', 'stderr',
}


def flatten_errors(detail, path=''):
    """
    DRF error detail as "path: message" lines, nested keys joined with dots.
    """
    if isinstance(detail, dict):
        lines = []
        for key, value in detail.items():
            lines.extend(flatten_errors(value, f'{path}.{key}' if path else str(key)))
        return lines
    if isinstance(detail, list):
        if all(isinstance(item, str) for item in detail):
            return [f'{path or "input"}: {item}' for item in detail]
        lines = []
        for i, item in enumerate(detail):
            if item:
                lines.extend(flatten_errors(item, f'{path}.{i}' if path else str(i)))
        return lines
    return [f'{path or "input"}: {detail}']


def load_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise CommandError(f'{path}: {e.strerror}', returncode=EXIT_INVALID)
    except json.JSONDecodeError as e:
        raise CommandError(f'{path}: line {e.lineno} column {e.colno}: {e.msg}', returncode=EXIT_INVALID)


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


class ReportCommand(BaseCommand):
    """
    A command that computes one result and prints it as a report.

    Subclasses implement add_command_arguments() and compute(**options);
    compute returns a JSON-ready dict. Errors of the computation apps map
    onto exit codes; Inconclusive is a result, not an error.
    """

    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('--field', help="Ground field, 'rationals' or 'fp:P'.")
        parser.add_argument('--max-words', type=int, help='Word cap per bar complex slice.')
        parser.add_argument('--max-truncation', type=int, help='Largest truncation degree of a presentation.')
        parser.add_argument('--threads', type=int, help='Worker threads where the command parallelizes.')
        parser.add_argument('--format', dest='output', choices=OUTPUT_FORMATS, help='Report format.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **options):
        self.inputs = {}
        try:
            self.config = RunConfig.from_settings(
                field=options['field'],
                max_words=options['max_words'],
                max_truncation=options['max_truncation'],
                threads=options['threads'],
                output=options['output'],
            )
            try:
                result = self.compute(**options)
            except Inconclusive as e:
                logger.info("%s: inconclusive (%s)", self.command_name, e)
                result = {'status': 'inconclusive', 'reason': str(e)}
        except ValidationError as e:
            raise CommandError('\n'.join(flatten_errors(e.detail)), returncode=EXIT_INVALID)
        except FormalityKitError as e:
            raise CommandError(str(e), returncode=exit_code_for(e))
        self.stdout.write(self.render(result, options))
        self.after_output(result)

    def compute(self, **options):
        raise NotImplementedError('subclasses of ReportCommand must provide a compute() method')

    def after_output(self, result):
        pass

    def read(self, path, serializer_class, **context):
        """
        Load a JSON file and build its domain value through a serializer.
        """
        data = load_json(path)
        self.inputs[path] = data
        context.setdefault('field', self.config.field)
        context.setdefault('max_truncation', self.config.max_truncation)
        serializer = serializer_class(data=data, context=context)
        try:
            serializer.is_valid(raise_exception=True)
            return serializer.save()
        except ValidationError as e:
            lines = [f'{path}: {line}' for line in flatten_errors(e.detail)]
            raise CommandError('\n'.join(lines), returncode=EXIT_INVALID)

    def report(self, result, options):
        echo = {key: value for key, value in options.items() if key not in DJANGO_OPTIONS and value is not None}
        echo.update(self.config.as_dict())
        if self.inputs:
            echo['files'] = self.inputs
        return {
            'tool': TOOL_NAME,
            'version': __version__,
            'command': self.command_name,
            'input': echo,
            'result': result,
        }

    def render(self, result, options):
        if self.config.output == 'csv':
            rows = self.csv_rows(result)
            if rows is None:
                raise CommandError(f'{self.command_name} has no csv output.', returncode=EXIT_INVALID)
            fields, rows = rows
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator='\n')
            writer.writeheader()
            writer.writerows(rows)
            return buffer.getvalue().rstrip('\n')
        if self.config.output == 'human':
            return self.render_human(result)
        return dumps(self.report(result, options))

    def csv_rows(self, result):
        """
        (fieldnames, rows) for csv output, or None when the result is not a table.
        """
        return None

    def render_human(self, result):
        return dumps(result)
