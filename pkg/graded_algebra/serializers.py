from fractions import Fraction

from rest_framework import serializers

from exact_linalg.fields import RATIONALS
from exact_linalg.serializers import FieldSpecField, RationalField, rational_string
from .algebras import AlgebraError, GradedAlgebra, require_valid


class TermSerializer(serializers.Serializer):
    label = serializers.CharField()
    coeff = RationalField(default=Fraction(1))


class BasisElementSerializer(serializers.Serializer):
    label = serializers.CharField()
    degree = serializers.IntegerField()


class ProductSerializer(serializers.Serializer):
    left = serializers.CharField()
    right = serializers.CharField()
    result = TermSerializer(many=True, allow_empty=True)


class AlgebraSerializer(serializers.Serializer):
    """
    Algebra by structure constants.

    When "unit" is omitted it is the sum of the idempotents, or the only
    degree-0 basis element.
    """

    field = FieldSpecField(required=False)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    basis = BasisElementSerializer(many=True, allow_empty=False)
    mult = ProductSerializer(many=True, allow_empty=True)
    unit = TermSerializer(many=True, required=False)
    idempotents = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(), allow_empty=False),
        required=False,
    )

    def validate(self, data):
        labels = [b['label'] for b in data['basis']]
        if len(set(labels)) != len(labels):
            raise serializers.ValidationError({'basis': 'Basis labels must be unique.'})
        known = set(labels)
        for i, entry in enumerate(data['mult']):
            used = [entry['left'], entry['right']] + [t['label'] for t in entry['result']]
            unknown = sorted(set(used) - known)
            if unknown:
                raise serializers.ValidationError({'mult': {i: f'Unknown labels {unknown}.'}})
        for i, subset in enumerate(data.get('idempotents', [])):
            unknown = sorted(set(subset) - known)
            if unknown:
                raise serializers.ValidationError({'idempotents': {i: f'Unknown labels {unknown}.'}})
        if 'unit' not in data and 'idempotents' not in data:
            degree_zero = [b['label'] for b in data['basis'] if b['degree'] == 0]
            if len(degree_zero) != 1:
                raise serializers.ValidationError(
                    {'unit': 'Required unless idempotents are given or A^0 is one-dimensional.'}
                )
        return data

    def create(self, validated_data):
        field = validated_data.get('field') or self.context.get('field', RATIONALS)
        basis = [(b['label'], b['degree']) for b in validated_data['basis']]
        mult = {}
        for entry in validated_data['mult']:
            result = mult.setdefault((entry['left'], entry['right']), {})
            for term in entry['result']:
                result[term['label']] = result.get(term['label'], 0) + term['coeff']
        idempotents = None
        if 'idempotents' in validated_data:
            idempotents = [{label: 1 for label in subset} for subset in validated_data['idempotents']]
        if 'unit' in validated_data:
            unit = {}
            for term in validated_data['unit']:
                unit[term['label']] = unit.get(term['label'], 0) + term['coeff']
        elif idempotents is not None:
            unit = {label: 1 for e in idempotents for label in e}
        else:
            unit = {label: 1 for label, degree in basis if degree == 0}
        try:
            A = GradedAlgebra(basis, mult, unit, idempotents, field, name=validated_data['name'])
            return require_valid(A)
        except AlgebraError as e:
            raise serializers.ValidationError({'algebra': str(e)})


def algebra_payload(A):
    """
    JSON form of an algebra, readable back through AlgebraSerializer.
    """
    payload = {
        'field': str(A.field),
        'name': A.name,
        'basis': [{'label': label, 'degree': degree} for label, degree in A.basis],
        'mult': [
            {
                'left': left,
                'right': right,
                'result': [{'label': label, 'coeff': rational_string(c)} for label, c in result.items()],
            }
            for (left, right), result in A.mult.items()
        ],
        'unit': [{'label': label, 'coeff': rational_string(c)} for label, c in A.unit.items()],
    }
    if A.idempotents is not None:
        payload['idempotents'] = [sorted(e) for e in A.idempotents]
    return payload
