from django.apps import AppConfig


class HochschildConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hochschild'
