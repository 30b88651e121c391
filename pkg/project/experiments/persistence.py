"""Result files: JSON Lines or flattened CSV, written atomically."""

import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path

import yaml

from common.exceptions import DataFileError
from experiments.choices import OutputFormat
from experiments.records import RECORD_FIELDS
from experiments.serializers import ResultRecordSerializer

logger = logging.getLogger(__name__)

TRUNCATION_TRAILER = "# truncated"


def record_rows(records, timestamps=True):
    rows = []
    for record in records:
        row = record.to_dict() if hasattr(record, "to_dict") else dict(record)
        if not timestamps:
            row["duration_ms"] = None
        rows.append(row)
    return rows


def flatten(row, prefix=""):
    """Dotted column names; list items are indexed."""
    flat = {}
    items = row.items() if isinstance(row, dict) else enumerate(row)
    for key, value in items:
        name = f"{prefix}{key}"
        if isinstance(value, (dict, list)) and value:
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, (dict, list)):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


def render_jsonl(rows, truncated=False):
    lines = [json.dumps(row, ensure_ascii=False, allow_nan=False) for row in rows]
    if truncated:
        lines.append(json.dumps({"truncated": True, "completed": len(rows)}))
    return "".join(f"{line}\n" for line in lines)


def render_csv(rows, truncated=False):
    flat_rows = [flatten(row) for row in rows]
    columns = list(RECORD_FIELDS) if not flat_rows else list(dict.fromkeys(k for r in flat_rows for k in r))
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in flat_rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    if truncated:
        buffer.write(f"{TRUNCATION_TRAILER}\n")
    return buffer.getvalue()


def persist(records, path, fmt=OutputFormat.JSONL, truncated=False, timestamps=True):
    """Write ``records`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    rows = record_rows(records, timestamps=timestamps)
    renderer = render_csv if OutputFormat(fmt) == OutputFormat.CSV else render_jsonl
    text = renderer(rows, truncated=truncated)
    directory = path.parent if str(path.parent) else Path(".")
    temp_name = None
    try:
        handle, temp_name = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(temp_name, path)
    except OSError as exc:
        if temp_name is not None and os.path.exists(temp_name):
            os.unlink(temp_name)
        raise DataFileError(f"cannot write results: {exc.strerror}", path) from exc
    logger.info(f"wrote {len(rows)} record(s) to {path}")
    return path


def read_records(path):
    """Validated record dicts from a JSON Lines file; the truncation line is skipped."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read records: {exc.strerror}", path) from exc
    except UnicodeDecodeError as exc:
        raise DataFileError(f"records file is not UTF-8 text: {exc.reason}", path, offset=exc.start) from None
    records = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFileError(f"line {number} is not JSON: {exc.msg}", path, line=number) from None
        if isinstance(data, dict) and data.get("truncated"):
            continue
        serializer = ResultRecordSerializer(data=data)
        if not serializer.is_valid():
            raise DataFileError(f"line {number} is not a result record", path, line=number, errors=serializer.errors)
        records.append(dict(serializer.validated_data))
    return records


def load_config(path):
    """Mapping read from a YAML or JSON config file."""
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataFileError(f"cannot read config: {exc.strerror}", path) from exc
    except UnicodeDecodeError as exc:
        raise DataFileError(f"config file is not UTF-8 text: {exc.reason}", path, offset=exc.start) from None
    except yaml.YAMLError as exc:
        raise DataFileError(f"config is not valid YAML or JSON: {exc}", path) from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise DataFileError("config must be a mapping", path)
    return data


def load_thresholds(path=None):
    """The checked-in ``test-id -> {value, oracle_command}`` fixture mapping."""
    from django.conf import settings

    path = Path(path or settings.DERIVED_FIXTURES_PATH)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataFileError(f"cannot read fixtures: {exc.strerror}", path) from exc
    except UnicodeDecodeError as exc:
        raise DataFileError(f"fixtures file is not UTF-8 text: {exc.reason}", path, offset=exc.start) from None
    except json.JSONDecodeError as exc:
        raise DataFileError(f"fixtures are not JSON: {exc.msg}", path, line=exc.lineno) from None
