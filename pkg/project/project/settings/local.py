# ============================
# Local Environment Settings
# ============================
import logging

logger = logging.getLogger(__name__)
logger.info("I am in local settings")

from .base import *


# Database
# Nothing is persisted; the entry only keeps management commands happy.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / '../energy_lab_db.sqlite3',
    }
}

# Sweeps run in-process unless a broker is configured explicitly.
CELERY_TASK_ALWAYS_EAGER = config("CELERY_TASK_ALWAYS_EAGER", default=True, cast=bool)
