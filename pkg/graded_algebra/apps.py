from django.apps import AppConfig


class GradedAlgebraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'graded_algebra'
