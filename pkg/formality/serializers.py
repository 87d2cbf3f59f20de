from rest_framework import serializers

from .certificates import METHODS, SUBJECTS, VERDICTS
from .models import CertificateRecord


class ChainTermSerializer(serializers.Serializer):
    label = serializers.CharField()
    slope = serializers.IntegerField()
    intercept = serializers.IntegerField()


class ChainSerializer(serializers.Serializer):
    p0 = serializers.IntegerField(min_value=0)
    terms = ChainTermSerializer(many=True, allow_empty=False)
    relations = serializers.ListField(child=serializers.ChoiceField(choices=['<', '<=']))


class QRangeSerializer(serializers.Serializer):
    parity = serializers.ChoiceField(choices=['even', 'odd'], allow_null=True)
    to = serializers.IntegerField(allow_null=True)

    def get_fields(self):
        fields = super().get_fields()
        # 'from' is a keyword
        fields['from'] = serializers.IntegerField(min_value=0)
        return fields


class EvidenceSerializer(serializers.Serializer):
    method = serializers.ChoiceField(choices=METHODS)
    q_range = QRangeSerializer()
    claim = serializers.CharField(allow_blank=True)
    detail = serializers.DictField()
    chain = ChainSerializer(allow_null=True, required=False)

    def validate(self, data):
        if data['method'] in ('DegreeBound', 'PeriodicResolution') and not data.get('chain'):
            raise serializers.ValidationError({'chain': f"{data['method']} evidence needs a chain."})
        return data


class CertificatePayloadSerializer(serializers.Serializer):
    """
    Shape check of a certificate before it is replayed.
    """

    subject = serializers.ChoiceField(choices=SUBJECTS)
    parameters = serializers.DictField(child=serializers.IntegerField())
    verdict = serializers.ChoiceField(choices=VERDICTS)
    evidence = EvidenceSerializer(many=True)
    failed_hypotheses = serializers.ListField(child=serializers.CharField(), default=list)
    remarks = serializers.ListField(child=serializers.CharField(), default=list)
    uncovered = serializers.ListField(child=serializers.IntegerField(), default=list)
    experimental = serializers.BooleanField(default=False)

    def validate(self, data):
        required = {'single': {'n', 'k'}, 'pn-config': {'n', 'k', 'h'}, 'spherical': {'k', 'h_min', 'h_max'}}
        missing = sorted(required[data['subject']] - set(data['parameters']))
        if missing:
            raise serializers.ValidationError({'parameters': f'Missing {missing}.'})
        return data


class CertificateRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = CertificateRecord
        fields = ['id', 'subject', 'parameters', 'verdict', 'payload', 'created_at']
        read_only_fields = ['id', 'created_at']


def archive(certificate):
    """
    Store a certificate; returns the CertificateRecord.
    """
    serializer = CertificateRecordSerializer(data={
        'subject': certificate.subject,
        'parameters': certificate.parameters,
        'verdict': certificate.verdict,
        'payload': certificate.as_dict(),
    })
    serializer.is_valid(raise_exception=True)
    return serializer.save()
