import json
from pathlib import Path

import mpmath
import numpy as np
import pytest

from equivk.documents import DocumentError, GroupInputDocument, ReportDocument, parse_entry

INPUTS = sorted((Path(__file__).parent.parent / "inputs").glob("*.json"))

mpmath.mp.dps = 30


@pytest.mark.parametrize("text, oracle", [
    ("1", mpmath.mpf(1)),
    ("-1/2", mpmath.mpf(-1) / 2),
    ("sqrt(2)/2", mpmath.sqrt(2) / 2),
    ("-sqrt(3)/2", -mpmath.sqrt(3) / 2),
    ("sqrt(5)", mpmath.sqrt(5)),
    ("cos(2pi/5)", mpmath.cos(2 * mpmath.pi / 5)),
    ("-sin(2pi/7)", -mpmath.sin(2 * mpmath.pi / 7)),
    ("sin(2pi/12)", mpmath.sin(2 * mpmath.pi / 12)),
    ("0.25", mpmath.mpf("0.25")),
])
def test_entry_grammar(text, oracle):
    assert abs(parse_entry(text) - float(oracle)) <= 1e-15


def test_numeric_entries():
    assert parse_entry(3) == 3.0
    assert parse_entry(-0.5) == -0.5


@pytest.mark.parametrize("bad", ["1/0", "sqrt(2)/0", "cos(2pi/0)", "tan(1)", "pi", True, None])
def test_bad_entries(bad):
    with pytest.raises(DocumentError):
        parse_entry(bad)


def test_document_validation():
    with pytest.raises(DocumentError):
        GroupInputDocument.loads("{not json")
    with pytest.raises(DocumentError):
        GroupInputDocument.from_dict({"dimension": 2})
    with pytest.raises(DocumentError):
        GroupInputDocument.from_dict({"dimension": 2, "generators": [[["1"]]]})
    with pytest.raises(DocumentError):
        GroupInputDocument.from_dict({"dimension": 1, "generators": [[[1]]], "extra": 0})


@pytest.mark.parametrize("path", INPUTS, ids=lambda p: p.stem)
def test_shipped_inputs_round_trip(path):
    doc = GroupInputDocument.loads(path.read_text())
    again = GroupInputDocument.loads(doc.dumps())
    assert again == doc
    assert again.to_dict() == json.loads(path.read_text())
    for m in doc.matrices():
        assert np.allclose(m @ m.T, np.eye(doc.dimension), atol=1e-12)


def test_report_round_trip():
    doc = ReportDocument({"builtin": "sym", "n": 3},
                         {"rank_k0": 1, "rank_k1": 1},
                         {"karoubi": {"rank_k0": 1, "rank_k1": 1}},
                         {"total_seconds": 0.1})
    text = doc.dumps()
    assert ReportDocument.loads(text) == doc
    d = json.loads(text)
    assert d["schema_version"] == 1
    assert set(d) == {"schema_version", "input_echo", "report"}
    assert "timing" not in json.loads(doc.dumps(with_timing=False))["report"]
