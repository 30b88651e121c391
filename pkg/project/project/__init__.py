from __future__ import absolute_import, unicode_literals

# Import the Celery app when Django starts so that shared_task binds to it
# and sweep points can be dispatched from management commands.
from .celery import app as celery_app

__all__ = ['celery_app']
