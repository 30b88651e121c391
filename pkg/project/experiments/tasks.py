from celery import shared_task

from experiments.harnesses import get_harness
from experiments.runner import validate_config


@shared_task
def evaluate_point(config_data, index):
    """Evaluate one parameter point of an experiment and return its record."""
    config = validate_config(config_data)
    return get_harness(config["kind"]).evaluate(config, index).to_dict()
