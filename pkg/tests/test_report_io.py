import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracheat.report_io import (
    BODY_FIELDS,
    SCHEMA_VERSION,
    ReportEnvelope,
    ReportFormatError,
    dumps,
    format_number,
    make_envelope,
    read_json,
    write_csv,
    write_json,
)

STAMP = "2024-01-01T00:00:00+00:00"


def body(**overrides):
    out = {
        "kind": "identity",
        "params": {"which": "gaussian-conv", "x": [0.0], "nested": {"b": 2, "a": 1}},
        "refs": ["convolution of Gaussians"],
        "grid": None,
        "results": {"lhs": 1.2533141373155, "rhs": 1.2533141373155001, "rel_error": 1e-16, "tolerance": 1e-8},
        "pass": True,
        "tool_version": "0.1.0",
    }
    out.update(overrides)
    return out


def test_round_trip_file(tmp_path):
    env = make_envelope(body(), STAMP)
    path = tmp_path / "r.json"
    write_json(env, path)
    back = read_json(path)
    assert back == env
    assert json.loads(path.read_text())["schema_version"] == 1


def test_round_trip_stream():
    env = make_envelope(body(), STAMP)
    buf = io.StringIO()
    write_json(env, buf)
    buf.seek(0)
    assert read_json(buf).as_dict() == env.as_dict()


def test_schema_version_is_integer_one():
    text = dumps(make_envelope(body(), STAMP))
    assert '"schema_version": 1,' in text
    assert SCHEMA_VERSION == 1


def test_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_json(make_envelope(body(), STAMP), a)
    write_json(make_envelope(body(), STAMP), b)
    assert a.read_bytes() == b.read_bytes()


def test_field_order_fixed():
    data = json.loads(dumps(make_envelope(body(), STAMP)))
    assert list(data) == ["schema_version", "created_at", "body"]
    assert tuple(data["body"]) == BODY_FIELDS


def test_default_timestamp_is_utc_iso():
    env = make_envelope(body())
    assert env.created_at.endswith("+00:00")


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_numbers_rejected(bad):
    env = make_envelope(body(results={"x": bad}), STAMP)
    with pytest.raises(ReportFormatError):
        dumps(env)


def test_numpy_values_serialize():
    env = make_envelope(body(results={"a": np.float64(0.1), "b": np.arange(3), "c": np.int64(4)}), STAMP)
    data = json.loads(dumps(env))
    assert data["body"]["results"] == {"a": 0.1, "b": [0, 1, 2], "c": 4}


def test_doubles_round_trip_exactly():
    vals = [0.1, 1 / 3, 2.0**-1074, 1.7976931348623157e308, math.pi]
    env = make_envelope(body(results={"v": vals}), STAMP)
    assert read_json(io.StringIO(dumps(env))).body["results"]["v"] == vals


def test_truncated_file_rejected(tmp_path):
    path = tmp_path / "r.json"
    write_json(make_envelope(body(), STAMP), path)
    path.write_text(path.read_text()[:-40])
    with pytest.raises(ReportFormatError):
        read_json(path)


def test_wrong_schema_version_rejected():
    data = make_envelope(body(), STAMP).as_dict()
    data["schema_version"] = 2
    with pytest.raises(ReportFormatError, match="schema_version"):
        read_json(io.StringIO(json.dumps(data)))


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d.update(extra=1), "extra"),
        (lambda d: d["body"].update(source=1), "source"),
        (lambda d: d["body"].pop("pass"), "pass"),
        (lambda d: d.pop("created_at"), "created_at"),
        (lambda d: d["body"].update({"pass": "yes"}), "pass"),
        (lambda d: d["body"].update(refs=[1]), "refs"),
        (lambda d: d.update(schema_version=True), "schema_version"),
    ],
)
def test_schema_violations_name_the_field(mutate, field):
    data = make_envelope(body(), STAMP).as_dict()
    data = json.loads(json.dumps(data))
    mutate(data)
    with pytest.raises(ReportFormatError, match=field):
        read_json(io.StringIO(json.dumps(data)))


def test_nan_literal_rejected_on_read():
    text = dumps(make_envelope(body(), STAMP)).replace("1e-16", "NaN")
    with pytest.raises(ReportFormatError):
        read_json(io.StringIO(text))


def test_write_failure_has_path_context(tmp_path):
    target = tmp_path / "missing" / "r.json"
    with pytest.raises(OSError, match="missing"):
        write_json(make_envelope(body(), STAMP), target)
    with pytest.raises(OSError, match="missing"):
        write_csv([[1]], ["a"], target)


def test_make_envelope_validates():
    with pytest.raises(ReportFormatError):
        make_envelope({"kind": "x"}, STAMP)
    assert isinstance(make_envelope(body(), STAMP), ReportEnvelope)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    rows = [[0.1, 2, "E", True], [1 / 3, -4, "D", False]]
    write_csv(rows, ["x", "k", "region", "flag"], path)
    with open(path, newline="") as fh:
        read = list(csv.reader(fh))
    assert read[0] == ["x", "k", "region", "flag"]
    assert all(len(r) == 4 for r in read)
    assert float(read[1][0]) == 0.1 and float(read[2][0]) == 1 / 3
    assert read[1][3] == "true"


def test_csv_width_checked():
    with pytest.raises(ReportFormatError):
        write_csv([[1, 2]], ["only"], io.StringIO())


def test_csv_non_finite_rejected():
    with pytest.raises(ReportFormatError):
        write_csv([[math.nan]], ["x"], io.StringIO())


@given(st.floats(allow_nan=False, allow_infinity=False))
@settings(max_examples=300)
def test_format_number_round_trips(x):
    assert float(format_number(x)) == x


def test_format_number_types():
    assert format_number(np.float32(0.5)) == "0.5"
    assert format_number(3) == "3"
    assert format_number(None) == ""
    assert format_number("C") == "C"
