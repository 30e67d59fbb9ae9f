import json

import pytest

from locprime.description import (
    DescriptionError,
    context_string,
    describe,
    load_description,
    parse_context,
    parse_description,
)
from locprime.module import is_isomorphic

Z6 = {"ring": {"base": "int", "modulus": "6"},
      "module": {"generators": 1, "relations": [["6"]]},
      "ideals": {"I": ["3"]}}


def test_parse_integer_description():
    d = parse_description(Z6)
    assert str(d.context) == "Z/6"
    assert d.module.torsion_factors == (6,)
    assert d.ideals["I"].generator == 3


def test_plain_json_integers_accepted():
    d = parse_description({"ring": {"base": "int"}, "module": {"generators": 2, "relations": [[2, 0], [0, 3]]}})
    assert d.module.torsion_factors == (6,)


def test_parse_polynomial_description():
    d = parse_description({"ring": {"base": "poly", "char": 2, "modulus": [0, 0, 1]},
                           "module": {"generators": 1},
                           "ideals": {"I": [[0, 0, 1]], "J": [[0, 1]]}})
    assert d.module.size() == 4
    assert list(d.ideals) == ["I", "J"]


@pytest.mark.parametrize("obj,where", [
    ({"ring": {"base": "int"}, "module": {"generators": 2, "relations": [[1, 2], [3]]}}, "module.relations[1]"),
    ({"ring": {"base": "rat"}, "module": {"generators": 1}}, "ring.base"),
    ({"ring": {"base": "poly", "char": 4}, "module": {"generators": 1}}, "ring.char"),
    ({"ring": {"base": "int", "modulus": "1"}, "module": {"generators": 1}}, "ring.modulus"),
    ({"ring": {"base": "int"}, "module": {"generators": -1}}, "module.generators"),
    ({"ring": {"base": "int"}}, "module"),
    ({"ring": {"base": "int"}, "module": {"generators": 1}, "ideals": {"I": ["x"]}}, "ideals.I[0]"),
    ({"ring": {"base": "int"}, "module": {"generators": 1, "extra": 1}}, "module.extra"),
])
def test_errors_name_the_field(obj, where):
    with pytest.raises(DescriptionError) as exc:
        parse_description(obj)
    assert exc.value.where == where


def test_round_trip(tmp_path):
    d = parse_description(Z6)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(describe(d.module, d.ideals)))
    again = load_description(str(path))
    assert again.context == d.context and is_isomorphic(again.module, d.module)
    assert again.ideals == d.ideals


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"ring": {"base": "int"},\n "module": }')
    with pytest.raises(DescriptionError) as exc:
        load_description(str(path))
    assert exc.value.where.startswith("line 2")


@pytest.mark.parametrize("text", ["Z", "Z/12", "F2[x]", "F3[x]/[0,0,1]"])
def test_context_strings(text):
    assert context_string(parse_context(text)) == text


@pytest.mark.parametrize("text", ["Q", "Z/1", "F4[x]", "F2[x]/x"])
def test_bad_context_strings(text):
    with pytest.raises(DescriptionError):
        parse_context(text)
