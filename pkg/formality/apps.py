from django.apps import AppConfig


class FormalityConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'formality'
