from __future__ import annotations

import json
import math
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stekbound import report
from stekbound.errors import InputError

GOLDEN = Path(__file__).parent / "golden"
MINIMAL = {"n": 4, "kappa": 0.5, "boundary_volumes": [3.0, 5.0], "V": 80.0}


def test_parse_minimal_descriptor():
    d = report.parse_descriptor(MINIMAL)
    assert (d.cls.n, d.cls.kappa, d.b, d.A, d.V) == (4, 0.5, 2, 5.0, 80.0)
    assert report.descriptor_to_dict(d) == MINIMAL


def test_parse_full_descriptor_round_trip():
    data = {
        "n": 3,
        "kappa": 1,
        "boundary_volumes": [12.5],
        "V": 300,
        "V1": 50,
        "genus": [3],
        "ell": {"1": 0.4, "2": 0.9},
        "laplace_eigs": [0, 0.2, 0.3],
    }
    d = report.parse_descriptor(data)
    assert d.ell == {1: 0.4, 2: 0.9}
    again = report.parse_descriptor(report.descriptor_to_dict(d))
    assert again == d


@pytest.mark.parametrize(
    "patch, message",
    [
        ({"extra": 1}, "unknown descriptor key"),
        ({"n": 3.0}, "n must be an integer"),
        ({"n": True}, "n must be an integer"),
        ({"kappa": "1"}, "kappa must be a number"),
        ({"kappa": 2.0}, "kappa"),
        ({"boundary_volumes": 3.0}, "boundary_volumes must be an array"),
        ({"genus": [2.5, 2]}, "genus must be an array of integers"),
        ({"ell": [1.0]}, "ell must be an object"),
        ({"ell": {"one": 1.0}}, "decimal index"),
        ({"laplace_eigs": [0, "x"]}, "laplace_eigs must be an array"),
        ({"V1": 500.0}, "V1 cannot exceed"),
    ],
)
def test_parse_descriptor_rejects(patch, message):
    with pytest.raises(InputError, match=message):
        report.parse_descriptor({**MINIMAL, **patch})


def test_parse_descriptor_missing_and_wrong_type():
    with pytest.raises(InputError, match="missing descriptor key"):
        report.parse_descriptor({"n": 4, "kappa": 0.5})
    with pytest.raises(InputError, match="JSON object"):
        report.parse_descriptor([1, 2])


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        report.load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError, match="not valid JSON"):
        report.load_json(bad)


# --- serialisation ----------------------------------------------------------------


def test_format_float():
    assert report.format_float(1.0) == "1.0"
    assert report.format_float(0.1) == "0.10000000000000001"
    assert report.format_float(1e-20) == "9.9999999999999995e-21"
    assert report.format_float(2.0**-3) == "0.125"
    assert report.format_float(math.inf) == "null"
    assert report.format_float(math.nan) == "null"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip(x):
    assert float(report.format_float(x)) == x


def test_dumps_sorted_and_parseable():
    doc = {"b": [1, 2.5, None, True], "a": {"z": "é", "y": {}}, "c": []}
    text = report.dumps(doc)
    assert json.loads(text) == doc
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert text.endswith("\n")
    with pytest.raises(TypeError):
        report.dumps({"x": object()})


def test_document_shape():
    doc = report.run_report(MINIMAL)
    assert doc["schema_version"] == report.SCHEMA_VERSION == "1"
    assert set(doc) == {"schema_version", "inputs", "derived", "items", "diagnostics"}
    assert doc["inputs"]["descriptor"] == MINIMAL
    assert doc["inputs"]["what_if"] == {}
    keys = [(i["target"], i["kind"], i["name"]) for i in doc["items"]]
    assert keys == sorted(keys)
    assert {i["name"] for i in doc["items"]} == {
        "sigma1_lower_volume",
        "sigma1_lower_volume_squared",
        "stekdir_floor",
        "sigma_b_lower_schoen",
    }


def test_reserialisation_is_byte_stable():
    text = report.dumps(report.run_report(MINIMAL, thm52=(1, 0.1), example51_j=2))
    assert report.dumps(json.loads(text)) == text


def test_constants_are_echoed():
    doc = report.run_report(MINIMAL, {"schoen": {"value": 0.5, "rigor": "rigorous"}})
    assert doc["inputs"]["constants"]["schoen"] == {"value": 0.5, "rigor": "rigorous"}
    item = next(i for i in doc["items"] if i["name"] == "sigma_b_lower_schoen")
    assert item["placeholders"] == [] and item["constants"] == ["schoen"]


def test_what_if_echo():
    doc = report.run_report(MINIMAL, thm52=(1, 0.1), example51_j=2)
    assert doc["inputs"]["what_if"] == {"short_arc": {"k": 1, "epsilon": 0.1}, "gluing_j": 2}


def test_render_text_mentions_every_item():
    doc = report.run_report(MINIMAL)
    text = report.render_text(doc)
    for item in doc["items"]:
        assert item["name"] in text
    assert "placeholders: c_thm13" in text
    assert text.splitlines()[-1].startswith("  ")  # diagnostics last


# --- golden files -------------------------------------------------------------------


def test_bundled_descriptor_golden():
    data = report.load_json(report.example_descriptor_path())
    text = report.dumps(report.run_report(data))
    assert text == (GOLDEN / "example_report.json").read_text(encoding="utf-8")


def test_bundled_descriptor_golden_with_what_ifs():
    data = report.load_json(report.example_descriptor_path())
    text = report.dumps(report.run_report(data, thm52=(2, 0.05), example51_j=8))
    assert text == (GOLDEN / "example_report_what_if.json").read_text(encoding="utf-8")
