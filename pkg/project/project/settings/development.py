# ============================
# Development Environment Settings
# ============================
import logging

logger = logging.getLogger(__name__)
logger.info("I am in development settings")

from .base import *


DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Sweep points are queued to the worker started by docker-compose.
CELERY_BROKER_URL = config("CELERY_BROKER_URL", default="redis://energy_lab_redis:6379/0")
CELERY_RESULT_BACKEND = config("CELERY_RESULT_BACKEND", default="redis://energy_lab_redis:6379/0")
CELERY_TASK_ALWAYS_EAGER = config("CELERY_TASK_ALWAYS_EAGER", default=False, cast=bool)
ENERGY_WORKERS = config("ENERGY_LAB_WORKERS", default=4, cast=int)
