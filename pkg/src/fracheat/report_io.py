"""On-disk formats: versioned JSON report envelopes and CSV tables.

JSON is written with a fixed key order and without NaN or infinities so that
identical inputs give byte-identical files. CSV numbers use 17 significant
digits, which round-trips every double.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import IO, Any, Iterable, Sequence

__all__ = [
    "SCHEMA_VERSION",
    "BODY_FIELDS",
    "ReportFormatError",
    "ReportEnvelope",
    "make_envelope",
    "dumps",
    "write_json",
    "read_json",
    "format_number",
    "write_csv",
]

SCHEMA_VERSION = 1
ENVELOPE_FIELDS = ("schema_version", "created_at", "body")
BODY_FIELDS = ("kind", "params", "refs", "grid", "results", "pass", "tool_version")


class ReportFormatError(ValueError):
    """A report does not follow the schema, or cannot be encoded."""


@dataclass(frozen=True)
class ReportEnvelope:
    schema_version: int
    created_at: str
    body: dict

    def as_dict(self) -> dict:
        return {"schema_version": self.schema_version, "created_at": self.created_at, "body": self.body}


def make_envelope(body: dict, created_at: str | None = None) -> ReportEnvelope:
    """Wrap a report body; ``created_at`` defaults to the current UTC time."""
    if created_at is None:
        created_at = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    envelope = ReportEnvelope(SCHEMA_VERSION, created_at, body)
    _validate(envelope.as_dict())
    return envelope


def _plain(obj: Any) -> Any:
    # numpy scalars and arrays expose item() / tolist()
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"object of type {type(obj).__name__} is not JSON serializable")


def dumps(envelope: ReportEnvelope) -> str:
    """Serialize deterministically; non-finite numbers raise :class:`ReportFormatError`."""
    try:
        return json.dumps(envelope.as_dict(), indent=2, allow_nan=False, default=_plain) + "\n"
    except ValueError as exc:
        raise ReportFormatError(f"report contains a non-finite number: {exc}") from exc


def write_json(envelope: ReportEnvelope, destination: str | os.PathLike | IO[str]) -> None:
    text = dumps(envelope)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {os.fspath(destination)!r}: {exc.strerror or exc}") from exc


def _reject_constant(name: str) -> float:
    raise ReportFormatError(f"non-finite number {name} is not allowed")


def _check_fields(obj: dict, expected: Sequence[str], where: str) -> None:
    for key in obj:
        if key not in expected:
            raise ReportFormatError(f"unknown field {where}{key!r}")
    for key in expected:
        if key not in obj:
            raise ReportFormatError(f"missing field {where}{key!r}")


def _validate(data: Any) -> None:
    if not isinstance(data, dict):
        raise ReportFormatError("report must be a JSON object")
    _check_fields(data, ENVELOPE_FIELDS, "")
    version = data["schema_version"]
    if isinstance(version, bool) or not isinstance(version, int):
        raise ReportFormatError("field 'schema_version' must be an integer")
    if version != SCHEMA_VERSION:
        raise ReportFormatError(f"unsupported schema_version {version}; expected {SCHEMA_VERSION}")
    if not isinstance(data["created_at"], str):
        raise ReportFormatError("field 'created_at' must be a string")
    body = data["body"]
    if not isinstance(body, dict):
        raise ReportFormatError("field 'body' must be an object")
    _check_fields(body, BODY_FIELDS, "body.")
    checks = {
        "kind": lambda v: isinstance(v, str),
        "params": lambda v: isinstance(v, dict),
        "refs": lambda v: isinstance(v, list) and all(isinstance(r, str) for r in v),
        "grid": lambda v: v is None or isinstance(v, dict),
        "results": lambda v: isinstance(v, dict),
        "pass": lambda v: isinstance(v, bool),
        "tool_version": lambda v: isinstance(v, str),
    }
    for key, ok in checks.items():
        if not ok(body[key]):
            raise ReportFormatError(f"field 'body.{key}' has the wrong type")


def read_json(source: str | os.PathLike | IO[str]) -> ReportEnvelope:
    """Parse and validate a report; unknown or missing fields raise :class:`ReportFormatError`."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"malformed report JSON: {exc}") from exc
    _validate(data)
    return ReportEnvelope(data["schema_version"], data["created_at"], data["body"])


def format_number(value: Any) -> str:
    """CSV cell text: floats with 17 significant digits, everything else via ``str``."""
    if isinstance(value, bool) or value is None:
        return str(value).lower() if isinstance(value, bool) else ""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, "dtype"):
        v = float(value)
        if not math.isfinite(v):
            raise ReportFormatError(f"non-finite value {v!r} cannot be written to CSV")
        return f"{v:.17g}"
    return str(value)


def write_csv(rows: Iterable[Sequence[Any]], header: Sequence[str], destination: str | os.PathLike | IO[str]) -> None:
    """Write a header row then the data rows; every row must match the header width."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    width = len(header)
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != width:
            raise ReportFormatError(f"row {i} has {len(row)} cells, header has {width}")
        writer.writerow([format_number(v) for v in row])
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {os.fspath(destination)!r}: {exc.strerror or exc}") from exc
