import json
from pathlib import Path

import pytest

from grlattice.io import (
    SchemaError,
    algebra_to_json,
    dumps,
    module_to_json,
    parse_algebra_file,
    parse_module_file,
)

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"
ALGEBRAS = {"kronecker.json": None, "a2.json": None, "a3_relation.json": None}
MODULES = {
    "kronecker_p2.json": "kronecker.json",
    "kronecker_r1_0.json": "kronecker.json",
    "kronecker_zero.json": "kronecker.json",
    "a3_p1.json": "a3_relation.json",
}


def load_alg(name):
    return parse_algebra_file((SCHEMAS / name).read_bytes())


def test_kronecker_file():
    alg = load_alg("kronecker.json")
    assert alg.vertices == ("1", "2")
    assert [a.name for a in alg.arrows] == ["a", "b"]
    assert alg.p == 2


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_algebra_round_trip_is_byte_identical(name):
    raw = (SCHEMAS / name).read_text()
    assert dumps(algebra_to_json(parse_algebra_file(raw))) == raw


@pytest.mark.parametrize("name, alg_name", sorted(MODULES.items()))
def test_module_round_trip_is_byte_identical(name, alg_name):
    raw = (SCHEMAS / name).read_text()
    assert dumps(module_to_json(parse_module_file(load_alg(alg_name), raw))) == raw


def _module_error(data, alg_name="kronecker.json"):
    with pytest.raises(SchemaError) as exc:
        parse_module_file(load_alg(alg_name), json.dumps(data))
    return exc.value


def test_entry_out_of_range_names_the_arrow():
    err = _module_error({"dims": {"1": 1, "2": 1}, "maps": {"a": [[1]], "b": [[2]]}})
    assert "arrow b" in str(err)
    assert err.path == "$.maps.b[0][0]"
    assert err.code == "schema_violation"


def test_shape_errors():
    assert "rows" in str(_module_error({"dims": {"1": 1, "2": 2}, "maps": {"a": [[1]]}}))
    assert _module_error({"dims": {"3": 1}}).path == "$.dims.3"
    assert _module_error({"dims": {"1": -1}}).path == "$.dims.1"
    assert _module_error({"dims": {"1": 1, "2": 1}, "maps": {"c": [[1]]}}).path == "$.maps.c"
    assert _module_error([1, 2]).path == "$"


def test_relation_violation():
    data = {"dims": {"1": 1, "2": 1, "3": 1}, "maps": {"a": [[1]], "b": [[1]]}}
    assert _module_error(data, "a3_relation.json").code == "relation_violation"


def test_non_parallel_relation_is_not_admissible():
    data = {
        "p": 2,
        "vertices": ["1", "2", "3"],
        "arrows": [{"name": "a", "src": "1", "tgt": "2"}, {"name": "b", "src": "2", "tgt": "3"},
                   {"name": "c", "src": "1", "tgt": "2"}, {"name": "d", "src": "2", "tgt": "2"}],
        "relations": [[{"coeff": 1, "path": ["a", "b"]}, {"coeff": 1, "path": ["c", "d"]}]],
    }
    with pytest.raises(SchemaError) as exc:
        parse_algebra_file(json.dumps(data))
    assert exc.value.code == "not_admissible"


@pytest.mark.parametrize(
    "text, code",
    [("{", "malformed_json"), (b"\xff", "malformed_json"), ('{"p": 4, "vertices": []}', "schema_violation"),
     ('{"vertices": [1]}', "schema_violation"), ('{"vertices": ["1"], "arrows": [{"name": "a"}]}', "schema_violation")],
)
def test_algebra_errors(text, code):
    with pytest.raises(SchemaError) as exc:
        parse_algebra_file(text)
    assert exc.value.code == code


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'
