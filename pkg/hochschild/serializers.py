from fractions import Fraction

from rest_framework import serializers

from exact_linalg.serializers import RationalField, rational_string
from .resolutions import PeriodicResolutionSpec, ResolutionTerm


class TensorTermSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    coeff = RationalField(default=Fraction(1))


class ResolutionTermSerializer(serializers.Serializer):
    shift = serializers.IntegerField()
    multiplier = TensorTermSerializer(many=True, required=False, default=list)


class ResolutionSerializer(serializers.Serializer):
    """
    Free resolution over the enveloping algebra of the algebra in context['algebra'].
    """

    terms = ResolutionTermSerializer(many=True, allow_empty=False)

    def validate_terms(self, terms):
        algebra = self.context['algebra']
        known = set(algebra.labels)
        for i, term in enumerate(terms):
            unknown = sorted({t['left'] for t in term['multiplier']} | {t['right'] for t in term['multiplier']})
            unknown = [label for label in unknown if label not in known]
            if unknown:
                raise serializers.ValidationError({i: f'Unknown labels {unknown}.'})
        return terms

    def create(self, validated_data):
        terms = tuple(
            ResolutionTerm(
                term['shift'],
                tuple((t['coeff'], t['left'], t['right']) for t in term['multiplier']),
            )
            for term in validated_data['terms']
        )
        return PeriodicResolutionSpec(self.context['algebra'], terms)


def resolution_payload(spec):
    return {
        'terms': [
            {
                'shift': term.shift,
                'multiplier': [
                    {'left': x, 'right': y, 'coeff': rational_string(c)} for c, x, y in term.multiplier
                ],
            }
            for term in spec.terms
        ]
    }
