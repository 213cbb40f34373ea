from django.apps import AppConfig


class BoundaryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'boundary'
    verbose_name = 'Boundary of the free group'
