from django.apps import AppConfig


class ExactLinalgConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'exact_linalg'
