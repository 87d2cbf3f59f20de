from fractions import Fraction

from rest_framework import serializers

from exact_linalg.fields import RATIONALS
from exact_linalg.serializers import FieldSpecField, RationalField, rational_string
from .tensor import DEFAULT_MAX_TRUNCATION, Generator, PresentationError, TensorPresentation


class GeneratorSerializer(serializers.Serializer):
    label = serializers.CharField()
    src = serializers.IntegerField(min_value=0)
    tgt = serializers.IntegerField(min_value=0)
    deg = serializers.IntegerField(min_value=1)


class RelationTermSerializer(serializers.Serializer):
    word = serializers.ListField(child=serializers.CharField(), allow_empty=False)
    coeff = RationalField(default=Fraction(1))


class PresentationSerializer(serializers.Serializer):
    """
    Tensor presentation: {"vertices": m, "generators": [...], "relations": [[...]], "truncation": D}.

    The truncation cap comes from context['max_truncation'].
    """

    field = FieldSpecField(required=False)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    vertices = serializers.IntegerField(min_value=1)
    generators = GeneratorSerializer(many=True, allow_empty=False)
    relations = serializers.ListField(
        child=RelationTermSerializer(many=True, allow_empty=False),
        allow_empty=True,
    )
    truncation = serializers.IntegerField(min_value=0)

    def validate(self, data):
        m = data['vertices']
        labels = [g['label'] for g in data['generators']]
        if len(set(labels)) != len(labels):
            raise serializers.ValidationError({'generators': 'Generator labels must be unique.'})
        for i, g in enumerate(data['generators']):
            if g['src'] >= m or g['tgt'] >= m:
                raise serializers.ValidationError(
                    {'generators': {i: f'src and tgt must lie in 0..{m - 1}.'}}
                )
        known = set(labels)
        for i, relation in enumerate(data['relations']):
            unknown = sorted({letter for term in relation for letter in term['word']} - known)
            if unknown:
                raise serializers.ValidationError({'relations': {i: f'Unknown generators {unknown}.'}})
        return data

    def create(self, validated_data):
        field = validated_data.get('field') or self.context.get('field', RATIONALS)
        generators = [Generator(g['label'], g['src'], g['tgt'], g['deg']) for g in validated_data['generators']]
        relations = [[(term['word'], term['coeff']) for term in relation] for relation in validated_data['relations']]
        try:
            return TensorPresentation(
                validated_data['vertices'], generators, relations, validated_data['truncation'], field,
                max_truncation=self.context.get('max_truncation', DEFAULT_MAX_TRUNCATION),
                name=validated_data['name'],
            )
        except PresentationError as e:
            raise serializers.ValidationError({'presentation': str(e)})


def presentation_payload(pres):
    return {
        'field': str(pres.field),
        'name': pres.name,
        'vertices': pres.vertices,
        'generators': [{'label': g.label, 'src': g.src, 'tgt': g.tgt, 'deg': g.deg} for g in pres.generators],
        'relations': [
            [{'word': list(word), 'coeff': rational_string(c)} for word, c in relation.items()]
            for relation in pres.relations
        ],
        'truncation': pres.truncation,
    }
