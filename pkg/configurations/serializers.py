from rest_framework import serializers

from .graphs import ConfigGraph, GraphError
from .kunneth import PoincarePolynomial


class EdgeSerializer(serializers.Serializer):
    u = serializers.CharField()
    v = serializers.CharField()
    a_uv = serializers.IntegerField(required=False, allow_null=True, default=None)
    a_vu = serializers.IntegerField(required=False, allow_null=True, default=None)
    d = serializers.IntegerField(required=False, allow_null=True, default=None)


class GraphSerializer(serializers.Serializer):
    vertices = serializers.ListField(child=serializers.CharField(), allow_empty=False)
    edges = EdgeSerializer(many=True, allow_empty=True, default=list)

    def create(self, validated_data):
        try:
            return ConfigGraph(validated_data['vertices'], [dict(edge) for edge in validated_data['edges']])
        except GraphError as e:
            raise serializers.ValidationError({'edges': str(e)})


def graph_payload(graph):
    edges = []
    for u, v in graph.edges:
        edges.append({
            'u': str(u),
            'v': str(v),
            'a_uv': graph.hom_degree(u, v),
            'a_vu': graph.hom_degree(v, u),
            'd': graph.edge_degree(u, v),
        })
    return {'vertices': [str(v) for v in graph.vertices], 'edges': edges}


class ComponentSerializer(serializers.Serializer):
    degree = serializers.IntegerField()
    dim = serializers.IntegerField(min_value=0)


class PoincareSerializer(serializers.Serializer):
    components = ComponentSerializer(many=True, allow_empty=True)

    def validate_components(self, value):
        degrees = [c['degree'] for c in value]
        if len(set(degrees)) != len(degrees):
            raise serializers.ValidationError("Each degree may appear once.")
        return value

    def create(self, validated_data):
        return PoincarePolynomial({c['degree']: c['dim'] for c in validated_data['components']})
