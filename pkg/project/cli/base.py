"""Shared plumbing for the management commands."""

import argparse
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from common.exceptions import EXIT_IO, EXIT_USAGE, EnergyLabError
from common.helpers import finite_or_none

logger = logging.getLogger(__name__)

EXIT_INTERRUPTED = 130


def _split(text, cast, what):
    try:
        values = [cast(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated {what}, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"expected at least one {what[:-1]}")
    return values


def int_list(text):
    return _split(text, int, "integers")


def float_list(text):
    return _split(text, float, "numbers")


def constant_pair(text):
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}") from None


def jsonable(value):
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return finite_or_none(value)


class LabCommand(BaseCommand):
    """A command whose library errors end the process with their exit code."""

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except EnergyLabError as exc:
            logger.debug(f"{type(exc).__name__}: {exc.detail}")
            raise CommandError(exc.message, returncode=exc.exit_code) from exc
        except OSError as exc:
            raise CommandError(str(exc), returncode=EXIT_IO) from exc

    def usage_error(self, message):
        raise CommandError(message, returncode=EXIT_USAGE)

    def emit(self, payload):
        self.stdout.write(json.dumps(jsonable(payload), allow_nan=False))
