# ============================
# Basic Imports and Path Setup
# ============================
from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# ===========================
# Security and Debug Settings
# ===========================
SECRET_KEY = config("SECRET_KEY", default="energy-lab-local-only")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = config("ALLOWED_HOSTS", default="", cast=lambda v: [s.strip() for s in v.split(",") if s.strip()])


# Application definition
DJANGO_APPS = [
    'django.contrib.contenttypes',
]

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'common',
    'numtheory',
    'setcore',
    'energy',
    'zeta',
    'bounds',
    'experiments',
    'cli',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# =========================
# Internationalization
# =========================
LANGUAGE_CODE = 'en-us'
TIME_ZONE = config("TIME_ZONE", default="UTC")
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# ===========================
# Ceilings
# ===========================
# Largest |A|*|B| any pairwise operation may touch.
PAIR_CEILING = config("ENERGY_LAB_CEILING", default=10**9, cast=int)
PRIME_SIEVE_CEILING = config("ENERGY_LAB_SIEVE_CEILING", default=10**8, cast=int)
SET_SIZE_CEILING = config("ENERGY_LAB_SET_CEILING", default=10**7, cast=int)
# Widest dense multiplicity table for k-fold sums.
DENSE_SPAN_CEILING = config("ENERGY_LAB_DENSE_SPAN", default=2**24, cast=int)
# Pair keys counted per partition by the streamed energy counter.
ENERGY_PARTITION_SIZE = config("ENERGY_LAB_PARTITION_SIZE", default=2**22, cast=int)
ENERGY_WORKERS = config("ENERGY_LAB_WORKERS", default=1, cast=int)
# Scratch directory for partition spill files; the system temp dir when unset.
ENERGY_SPILL_DIR = config("ENERGY_LAB_SPILL_DIR", default=None)


# ===========================
# Random zeta defaults
# ===========================
MC_CHUNK_SIZE = config("ENERGY_LAB_MC_CHUNK", default=16384, cast=int)
ZETA_TRUNCATION = config("ENERGY_LAB_ZETA_TRUNCATION", default=10**4, cast=int)
GCD_ZETA_TRUNCATION = config("ENERGY_LAB_GCD_TRUNCATION", default=10**6, cast=int)


# ===========================
# Experiment defaults
# ===========================
SHIFT_EXHAUSTIVE_LIMIT = config("ENERGY_LAB_SHIFT_EXHAUSTIVE", default=512, cast=int)
AP_IN_G_CONSTANT = config("ENERGY_LAB_AP_CONSTANT", default=1.0, cast=float)
DERIVED_FIXTURES_PATH = BASE_DIR.parent / "experiments" / "fixtures" / "derived_thresholds.json"


# ===========================
# Celery
# ===========================
CELERY_BROKER_URL = config("CELERY_BROKER_URL", default="memory://")
CELERY_RESULT_BACKEND = config("CELERY_RESULT_BACKEND", default="cache+memory://")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_ALWAYS_EAGER = config("CELERY_TASK_ALWAYS_EAGER", default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_RESULT_TIMEOUT = config("CELERY_RESULT_TIMEOUT", default=3600, cast=int)


# ===========================
# Logging
# ===========================
LOG_LEVEL = config("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in LOCAL_APPS
    },
}
