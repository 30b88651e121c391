# Test collection wiring: configure Django the same way manage.py does so
# plain pytest can run the SimpleTestCase suites in project/*/tests.py.
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "project"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "project.settings")

import django

django.setup()
