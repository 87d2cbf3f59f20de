from fractions import Fraction

from rest_framework import serializers

from .fields import FieldError, FieldSpec


def rational_string(value):
    """
    Canonical text of a rational: '3', '-1/2'.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class RationalField(serializers.Field):
    default_error_messages = {
        'invalid': 'Expected an exact rational such as "3" or "-1/2", got {value!r}.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool) or isinstance(data, float):
            self.fail('invalid', value=data)
        try:
            return Fraction(str(data).strip())
        except (ValueError, ZeroDivisionError):
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return rational_string(value)


class FieldSpecField(serializers.CharField):
    def to_internal_value(self, data):
        try:
            return FieldSpec.parse(super().to_internal_value(data))
        except FieldError as e:
            raise serializers.ValidationError(str(e))

    def to_representation(self, value):
        return str(value)
