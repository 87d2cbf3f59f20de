from django.db import models


class CertificateRecord(models.Model):
    """
    An emitted certificate, archived so it can be replayed later.
    """
    VERDICT_CHOICES = [
        ('CertifiedFormal', 'Certified formal'),
        ('CriterionInapplicable', 'Criterion inapplicable'),
        ('Inconclusive', 'Inconclusive'),
    ]

    subject = models.CharField(max_length=32)
    parameters = models.JSONField(default=dict)
    verdict = models.CharField(max_length=24, choices=VERDICT_CHOICES)
    payload = models.JSONField()
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        params = ' '.join(f'{key}={value}' for key, value in self.parameters.items())
        return f"{self.subject} {params}: {self.verdict}"
