# Generated by Django 5.0 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CertificateRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('subject', models.CharField(max_length=32)),
                ('parameters', models.JSONField(default=dict)),
                ('verdict', models.CharField(choices=[('CertifiedFormal', 'Certified formal'), ('CriterionInapplicable', 'Criterion inapplicable'), ('Inconclusive', 'Inconclusive')], max_length=24)),
                ('payload', models.JSONField()),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
