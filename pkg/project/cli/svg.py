"""Deterministic SVG line charts for result records."""

import math

from common.exceptions import DataFileError

WIDTH, HEIGHT, PAD = 720, 420, 60
TICKS = 5


def _esc(text):
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _fmt(value):
    return f"{value:.2f}"


def field_value(record, name):
    """``name`` as a dotted path, or looked up in params then measured."""
    if "." in name:
        value = record
        for part in name.split("."):
            if not isinstance(value, dict) or part not in value:
                return None, False
            value = value[part]
        return value, True
    for section in ("params", "measured"):
        if name in record.get(section, {}):
            return record[section][name], True
    if name in record:
        return record[name], True
    return None, False


def series(records, x_field, y_field, path):
    """``(x, y)`` pairs of numeric values in record order."""
    points = []
    for record in records:
        for name in (x_field, y_field):
            if not field_value(record, name)[1]:
                raise DataFileError(f"field {name!r} is missing from a record", path, field=name)
        x, _ = field_value(record, x_field)
        y, _ = field_value(record, y_field)
        if isinstance(x, (int, float)) and isinstance(y, (int, float)):
            points.append((float(x), float(y)))
    return points


class Axis:
    def __init__(self, values, log, start, end):
        self.log = log
        usable = [self.transform(v) for v in values if not log or v > 0]
        low, high = (min(usable), max(usable)) if usable else (0.0, 1.0)
        if low == high:
            low, high = low - 0.5, high + 0.5
        self.low, self.high = low, high
        self.start, self.end = start, end

    def transform(self, value):
        return math.log10(value) if self.log else value

    def position(self, value):
        share = (self.transform(value) - self.low) / (self.high - self.low)
        return self.start + share * (self.end - self.start)

    def ticks(self):
        for i in range(TICKS + 1):
            t = self.low + (self.high - self.low) * i / TICKS
            label = 10**t if self.log else t
            yield self.start + (self.end - self.start) * i / TICKS, f"{label:.4g}"


def line_chart(points, x_label, y_label, logx=False, logy=False, title=""):
    if logx or logy:
        points = [(x, y) for x, y in points if (not logx or x > 0) and (not logy or y > 0)]
    x_axis = Axis([x for x, _ in points], logx, PAD, WIDTH - PAD)
    y_axis = Axis([y for _, y in points], logy, HEIGHT - PAD, PAD)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{_esc(title or f'{y_label} against {x_label}')}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{PAD}" y1="{HEIGHT - PAD}" x2="{WIDTH - PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
    ]
    for position, label in x_axis.ticks():
        lines.append(
            f'<text x="{_fmt(position)}" y="{HEIGHT - PAD + 16}" font-size="10" text-anchor="middle">{_esc(label)}</text>'
        )
    for position, label in y_axis.ticks():
        lines.append(
            f'<text x="{PAD - 6}" y="{_fmt(position + 3)}" font-size="10" text-anchor="end">{_esc(label)}</text>'
        )
    scale = lambda log: " (log)" if log else ""
    lines.append(
        f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 16}" font-size="12" text-anchor="middle">{_esc(x_label + scale(logx))}</text>'
    )
    lines.append(
        f'<text x="16" y="{HEIGHT / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {HEIGHT / 2:.1f})">{_esc(y_label + scale(logy))}</text>'
    )
    if points:
        coords = [(x_axis.position(x), y_axis.position(y)) for x, y in points]
        path = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in coords)
        lines.append(f'<polyline points="{path}" fill="none" stroke="#4e79a7" stroke-width="2"/>')
        lines.extend(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" fill="#4e79a7"/>' for px, py in coords)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
