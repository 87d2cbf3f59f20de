import sys

from django.core.management import load_command_class

from formalitykit.exceptions import EXIT_INTERNAL, EXIT_INVALID, EXIT_OK
from formalitykit.version import TOOL_NAME

COMMANDS = ('hh', 'scan', 'tor', 'certify', 'recheck', 'normalize', 'signs', 'kunneth', 'build_config', 'sweep')


def usage():
    return f"usage: {TOOL_NAME} <command> [options]\ncommands: {', '.join(COMMANDS)}\n"


def dispatch(argv):
    """
    Run one command from an argument list (without the program name); returns the exit code.

    Reports go to stdout, diagnostics to stderr, exactly as under manage.py.
    """
    if not argv or argv[0] in ('-h', '--help'):
        sys.stderr.write(usage())
        return EXIT_OK if argv else EXIT_INVALID
    name = argv[0].replace('-', '_')
    if name not in COMMANDS:
        sys.stderr.write(f"Unknown command {argv[0]!r}.\n{usage()}")
        return EXIT_INVALID
    command = load_command_class('cli', name)
    try:
        command.run_from_argv([TOOL_NAME, name, *argv[1:]])
    except SystemExit as e:
        if e.code is None:
            return EXIT_OK
        return e.code if isinstance(e.code, int) else EXIT_INTERNAL
    return EXIT_OK


def main():
    import os

    import django

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'formalitykit.settings')
    django.setup()
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
