import pytest

from gnoop.diagnostics import CATALOG, Diagnostic, GnoopError, SourceSpan, WfReport, error, warning


def test_report_ok_ignores_warnings():
    assert WfReport((warning("E240", "cycle"),)).ok
    assert not WfReport((error("E210", "bound"),)).ok
    assert (WfReport() + WfReport((error("E100", "x"),))).codes == ["E100"]


def test_json_shape():
    d = error("E121", "mismatch", SourceSpan(8, 3), ["S"])
    assert d.to_json() == {"code": "E121", "severity": "error", "message": "mismatch", "line": 8, "column": 3, "related": ["S"]}
    assert str(d) == "8:3: error E121: mismatch"
    assert "line" not in warning("E241", "fuel").to_json()


def test_unknown_code_rejected():
    with pytest.raises(ValueError):
        Diagnostic("E999", "nope")
    with pytest.raises(ValueError):
        SourceSpan(0, 1)


def test_error_carries_codes():
    exc = GnoopError([error("E000", "a"), error("E002", "b")])
    assert exc.code == "E000" and exc.codes == ["E000", "E002"]
    assert "E002" in str(exc)


def test_catalog_ranges():
    assert all(code.startswith("E") and len(code) == 4 for code in CATALOG)
