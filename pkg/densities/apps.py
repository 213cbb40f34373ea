from django.apps import AppConfig


class DensitiesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'densities'
    verbose_name = 'Boundary densities and sphere measures'
