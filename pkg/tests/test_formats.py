import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from qsymmod.arith import Scalar
from qsymmod.catalog import load_catalog
from qsymmod.formats import (FormatError, certificate_from_json, certificate_to_json, dumps,
                             load_json_text, presentation_from_json, presentation_to_json,
                             presentation_text, scalar_from_json, scalar_to_json, spec_from_json,
                             spec_to_json)
from qsymmod.presentations import hyperoctahedral, permutation_times_z2

GOLDEN = Path(__file__).parent / "golden"
ENTRIES = {
    "segments-d2-N2-hyper": "catalog:segments?d=2&N=2#hyper",
    "segments-d2-N2-quotient": "catalog:segments?d=2&N=2#quotient",
    "free-orthogonal-I": "catalog:free-orthogonal?P=I",
    "free-orthogonal-swap": "catalog:free-orthogonal?P=swap",
    "two-point": "catalog:two-point",
}


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_goldens_match_catalog(name):
    spec, cert = load_catalog(ENTRIES[name])
    assert dumps(spec_to_json(spec)) == (GOLDEN / name / "filtration.json").read_text()
    assert dumps(certificate_to_json(cert)) == (GOLDEN / name / "certificate.json").read_text()


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_bit_exact_roundtrip(name):
    for fname, parse, emit in (("filtration.json", spec_from_json, spec_to_json),
                               ("certificate.json", certificate_from_json, certificate_to_json)):
        text = (GOLDEN / name / fname).read_text()
        assert dumps(emit(parse(json.loads(text)))) == text


def test_parsed_spec_equals_original():
    spec, _ = load_catalog("catalog:segments?d=2&N=1")
    assert spec_from_json(json.loads(dumps(spec_to_json(spec)))) == spec


fr = st.fractions(max_denominator=10 ** 6)


@given(fr, fr)
def test_scalar_roundtrip(a, b):
    x = Scalar(a, b)
    assert scalar_from_json(scalar_to_json(x), "$") == x


def test_scalar_shorthand_and_errors():
    assert scalar_from_json("3/4", "$") == Scalar(Scalar(3).re / 4)
    assert scalar_from_json(2, "$") == Scalar(2)
    with pytest.raises(FormatError, match=r"\$\.x"):
        scalar_from_json({"re": "1/0"}, "$.x")
    with pytest.raises(FormatError):
        scalar_from_json({"re": "1", "imag": "2"}, "$")
    with pytest.raises(FormatError):
        scalar_from_json(True, "$")


@pytest.mark.parametrize("p", [hyperoctahedral(2), permutation_times_z2(2)], ids=lambda p: p.name)
def test_presentation_roundtrip(p):
    q = presentation_from_json(json.loads(dumps(presentation_to_json(p))))
    assert q.relations == p.relations and q.comul == p.comul
    assert q.counit == p.counit and q.antipode == p.antipode and q.families == p.families


def test_presentation_text():
    txt = presentation_text(hyperoctahedral(2))
    assert txt.startswith("# A_h(2)\nfamilies:\n  u 2x2\nrelations: 16\n")
    assert "  u*[1,1] - u[1,1] = 0" in txt


def _golden(name, fname):
    return json.loads((GOLDEN / name / fname).read_text())


def test_error_paths_point_at_the_field():
    obj = _golden("two-point", "filtration.json")
    obj["algebra"]["star_matrix"][1][0] = {"re": "x"}
    with pytest.raises(FormatError) as exc:
        spec_from_json(obj)
    assert exc.value.path == "$.algebra.star_matrix[1][0]"

    obj = _golden("two-point", "filtration.json")
    del obj["j_matrix"]
    with pytest.raises(FormatError, match="missing field 'j_matrix'"):
        spec_from_json(obj)

    cert = _golden("two-point", "certificate.json")
    cert["beta_blocks"][1][0][0] = "v[1,1] + + 1"
    with pytest.raises(FormatError) as exc:
        certificate_from_json(cert)
    assert exc.value.path == "$.beta_blocks[1][0][0]" and "column" in str(exc.value)


def test_wrong_format_tag():
    obj = _golden("two-point", "filtration.json")
    obj["format"] = "filtration/9"
    with pytest.raises(FormatError, match="unsupported format"):
        spec_from_json(obj)


def test_malformed_json_reports_location():
    with pytest.raises(FormatError) as exc:
        load_json_text('{"a": [1, 2,, 3]}', "spec.json")
    assert exc.value.path == "spec.json" and "line 1, column 13" in str(exc.value)
