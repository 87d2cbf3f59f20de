class FormalityKitError(Exception):
    """Base class of every error raised by the computation apps."""


class InputValidationError(FormalityKitError, ValueError):
    """Malformed or inconsistent input."""


class ResourceLimitExceeded(FormalityKitError, RuntimeError):
    """A configured cap (slice words, truncation degree) would be exceeded."""


class Inconclusive(FormalityKitError):
    """The data at hand cannot settle the question; never a wrong answer."""


class ComplexError(FormalityKitError, AssertionError):
    """An assembled complex failed d∘d = 0."""


# CLI exit codes
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


def exit_code_for(error):
    if isinstance(error, InputValidationError):
        return EXIT_INVALID
    if isinstance(error, ResourceLimitExceeded):
        return EXIT_RESOURCE
    return EXIT_INTERNAL
