from django.apps import AppConfig


class FreeGroupConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'free_group'
    verbose_name = 'Free group combinatorics'
