"""Validation and ordered execution of experiment sweeps."""

import logging
from dataclasses import dataclass, field

from django.conf import settings

from common.exceptions import ConfigError
from experiments.choices import ExperimentKind
from experiments.harnesses import get_harness
from experiments.records import ResultRecord
from experiments.serializers import CONFIG_SERIALIZERS, ExperimentConfigSerializer

logger = logging.getLogger(__name__)


def _first_error(errors):
    field_name, messages = next(iter(errors.items()))
    while isinstance(messages, (list, dict)):
        messages = next(iter(messages.values())) if isinstance(messages, dict) else messages[0]
    return field_name, str(messages)


def validate_config(data):
    """Validated config dict for ``data``; ``ConfigError`` names the first bad field."""
    base = ExperimentConfigSerializer(data=data)
    if not base.is_valid():
        field_name, message = _first_error(base.errors)
        raise ConfigError(f"{field_name}: {message}", errors=base.errors)
    serializer = CONFIG_SERIALIZERS[ExperimentKind(base.validated_data["kind"])](data=data)
    if not serializer.is_valid():
        field_name, message = _first_error(serializer.errors)
        raise ConfigError(f"{field_name}: {message}", errors=serializer.errors)
    return dict(serializer.validated_data)


def iter_records(config_data):
    """Records of every parameter point, in point order.

    Eager mode evaluates the points in-process one by one; otherwise one
    Celery task per point is queued up front and results are gathered in
    order, so the output never depends on scheduling.
    """
    from experiments.tasks import evaluate_point

    config = validate_config(config_data)
    harness = get_harness(config["kind"])
    count = len(harness.points(config))
    logger.info(f"running {config['kind']} over {count} point(s) with seed {config['seed']}")
    if settings.CELERY_TASK_ALWAYS_EAGER:
        for index in range(count):
            yield harness.evaluate(config, index)
        return
    pending = [evaluate_point.apply_async(args=(config_data, index)) for index in range(count)]
    for result in pending:
        yield ResultRecord(**result.get(timeout=settings.CELERY_RESULT_TIMEOUT))


@dataclass
class RunOutcome:
    records: list = field(default_factory=list)
    truncated: bool = False


def run_experiment(config_data, on_record=None):
    """Run a sweep to completion or interruption.

    An interrupt keeps the records finished so far and marks the outcome as
    truncated.
    """
    outcome = RunOutcome()
    try:
        for record in iter_records(config_data):
            outcome.records.append(record)
            if on_record is not None:
                on_record(record)
    except KeyboardInterrupt:
        logger.warning(f"interrupted after {len(outcome.records)} record(s)")
        outcome.truncated = True
    return outcome


def _run(kind, config_data):
    return run_experiment({**config_data, "kind": kind}).records


def run_repulsion(config_data):
    return _run(ExperimentKind.REPULSION, config_data)


def run_ap_search(config_data):
    return _run(ExperimentKind.AP_SEARCH, config_data)


def run_shift_growth(config_data):
    return _run(ExperimentKind.SHIFT_GROWTH, config_data)


def run_tl_scan(config_data):
    return _run(ExperimentKind.TL_SCAN, config_data)


def run_incidence(config_data):
    return _run(ExperimentKind.INCIDENCE, config_data)


def run_product_growth(config_data):
    return _run(ExperimentKind.PRODUCT_GROWTH, config_data)


def run_identity_suite(config_data):
    return _run(ExperimentKind.IDENTITIES, config_data)
