from dataclasses import dataclass

from django.conf import settings

from exact_linalg.fields import FieldSpec
from .exceptions import InputValidationError

OUTPUT_FORMATS = ('json', 'csv', 'human')


@dataclass(frozen=True)
class RunConfig:
    """
    Per-invocation settings of a command: field, resource caps, output format.
    """

    field: FieldSpec
    max_words: int
    max_truncation: int
    threads: int = 1
    output: str = 'json'

    def __post_init__(self):
        for name in ('max_words', 'max_truncation', 'threads'):
            value = getattr(self, name)
            if value < 1:
                raise InputValidationError(f"{name} must be positive, got {value}.")
        if self.output not in OUTPUT_FORMATS:
            raise InputValidationError(f"Unknown output format {self.output!r}; expected one of {OUTPUT_FORMATS}.")

    @classmethod
    def from_settings(cls, field=None, max_words=None, max_truncation=None, threads=None, output=None):
        """
        Settings defaults, overridden by every argument that is not None.
        """
        return cls(
            field=FieldSpec.parse(field or settings.FORMALITYKIT_FIELD),
            max_words=settings.FORMALITYKIT_MAX_WORDS if max_words is None else max_words,
            max_truncation=settings.FORMALITYKIT_MAX_TRUNCATION if max_truncation is None else max_truncation,
            threads=settings.FORMALITYKIT_THREADS if threads is None else threads,
            output=output or settings.FORMALITYKIT_OUTPUT,
        )

    def as_dict(self):
        return {
            'field': str(self.field),
            'max_words': self.max_words,
            'max_truncation': self.max_truncation,
            'threads': self.threads,
            'output': self.output,
        }
