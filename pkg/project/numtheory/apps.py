from django.apps import AppConfig


class NumtheoryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'numtheory'
    verbose_name = "Primes, factorization and truncated zeta values"
