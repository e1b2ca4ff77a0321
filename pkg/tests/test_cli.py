import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkit.catalog import catalog_get, catalog_names, module_get
from dkit.cli import run
from dkit.descent import DESCENT_CASES
from dkit.errors import ParseError
from dkit.io import (algebra_to_obj, descent_spec_to_obj, dimodule_to_obj, load_algebra, load_descent_spec,
                     load_dimodule, load_loop_spec, save_algebra)
from dkit.reports import Report, emit, parse, render_text


@pytest.mark.parametrize("name", catalog_names())
def test_algebra_json_roundtrip(name, tmp_path):
    A = catalog_get(name)
    path = tmp_path / "a.json"
    save_algebra(A, path)
    B = load_algebra(path)
    assert B.field == A.field and B.table == A.table and B.flavor == A.flavor
    assert set(B.automorphisms) == set(A.automorphisms)


def test_dimodule_json_roundtrip():
    A = catalog_get("sl2")
    M = module_get(A, "V(2)")
    N = load_dimodule(dimodule_to_obj(M), A)
    assert N.same_as(M)


def test_descent_spec_roundtrip(tmp_path):
    A, st_, z = DESCENT_CASES["quaternion"]()
    path = tmp_path / "d.json"
    path.write_text(json.dumps(descent_spec_to_obj(A, st_, z)))
    A2, st2, z2 = load_descent_spec(path)
    assert A2.table == A.table and all(z2.z[k] == z.z[k] for k in z.z)


def test_parse_errors_are_located(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "dim": 2,\n "structure": [[0, 0, 0, "1/0"]]\n}')
    with pytest.raises(ParseError, match="line 3"):
        load_algebra(bad)
    broken = tmp_path / "broken.json"
    broken.write_text('{\n "dim": 2,\n "structure": [\n}')
    with pytest.raises(ParseError, match="line 4"):
        load_algebra(broken)
    with pytest.raises(ParseError, match="dim"):
        load_algebra({"structure": []})


def test_loop_spec_validation():
    assert load_loop_spec({"base": "sl2", "automorphism": "id", "order": 1})["window"] == 10
    with pytest.raises(ParseError):
        load_loop_spec({"base": "sl2", "automorphism": "id", "order": 1, "window": 0})


json_scalars = st.one_of(st.integers(-5, 5), st.text(max_size=5), st.booleans(), st.none())


@given(st.builds(Report, command=st.sampled_from(["der", "loop", "verify"]),
                 status=st.sampled_from(["pass", "inconclusive", "invalid", "identity-failure"]),
                 summary=st.dictionaries(st.text(max_size=6), json_scalars, max_size=4),
                 columns=st.lists(st.text(max_size=4), max_size=3),
                 rows=st.lists(st.dictionaries(st.text(max_size=4), json_scalars, max_size=3), max_size=3),
                 checks=st.dictionaries(st.text(max_size=6), st.booleans(), max_size=3),
                 messages=st.lists(st.text(max_size=10), max_size=2)))
def test_report_roundtrip(rep):
    assert parse(emit(rep)) == rep
    render_text(rep)


@pytest.mark.parametrize("status,code", [("pass", 0), ("invalid", 2), ("inconclusive", 3),
                                         ("identity-failure", 4)])
def test_exit_code_contract(status, code):
    assert Report("x", status=status).exit_code == code


def test_der_sl2():
    code, text = run(["der", "--algebra", "sl2", "--module", "adjoint"])
    assert code == 0
    assert "dim Der = 3; dim IDer = 3; H¹ = 0" in text


def test_der_abelian():
    code, text = run(["der", "--algebra", "abelian1"])
    assert code == 0 and "dim Der = 1" in text


def test_hh1_quaternions():
    code, text = run(["hh1", "--algebra", "quaternion(-1,-1)", "--format", "structured"])
    assert code == 0 and parse(text).summary["HH¹"] == 0


def test_relative_derivations():
    code, text = run(["der", "--algebra", "sl2", "--over", "K", "--ext", "dual", "--format", "structured"])
    assert code == 0 and parse(text).summary["dim Der"] == 6
    code, _ = run(["der", "--algebra", "sl2", "--over", "K"])
    assert code == 2


def test_cent_and_ider():
    assert "dim Cent = 1" in run(["cent", "--algebra", "M2"])[1]
    assert "dim IDer = 3" in run(["ider", "--algebra", "M2"])[1]
    assert run(["ider", "--algebra", "jordan_H2"])[0] == 2


def test_invalid_inputs():
    assert run(["der", "--algebra", "nosuch"])[0] == 2
    assert run(["der", "--algebra", "sl2", "--module", "V(x)"])[0] == 2
    assert run(["h1", "--algebra", "M2"])[0] == 2
    assert run(["loop", "--base", "sl2", "--auto", "conj_h", "--order", "3"])[0] == 2


def test_loop_table():
    code, text = run(["loop", "--base", "sl2", "--auto", "id", "--order", "1", "--deltas", "0..0",
                      "--format", "structured"])
    rep = parse(text)
    assert code == 0
    assert rep.rows[0]["dim B_delta"] == 3 and rep.rows[0]["dim Der_delta"] == 4


def test_loop_empty_range():
    code, text = run(["loop", "--base", "sl2", "--deltas", "1..0", "--format", "structured"])
    assert code == 0 and parse(text).rows == []


def test_loop_inconclusive_exit():
    code, text = run(["loop", "--base", "h3", "--deltas", "0..0", "--window", "6"])
    assert code == 3 and "larger --window" in text


def test_verify_negative_delta_syntax():
    code, text = run(["verify", "--case", "a1-twisted", "--deltas", "-1..1", "--window", "6",
                      "--format", "structured"])
    rep = parse(text)
    assert code == 0 and [r["delta"] for r in rep.rows] == [-1, 0, 1]
    assert all(rep.checks.values())


def test_verify_descent_case_and_spec(tmp_path):
    code, text = run(["verify", "--case", "quaternion"])
    assert code == 0 and "status: PASS" in text
    A, st_, z = DESCENT_CASES["quaternion"]()
    path = tmp_path / "q.json"
    path.write_text(json.dumps(descent_spec_to_obj(A, st_, z)))
    assert run(["verify", "--spec", str(path)])[0] == 0


def test_verify_loop_spec(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"base": "sl2", "automorphism": "conj_h", "order": 2, "deltas": [0, 1],
                                "window": 6}))
    code, text = run(["verify", "--spec", str(path), "--format", "structured"])
    assert code == 0 and len(parse(text).rows) == 2


def test_verify_precondition_failure_exit():
    code, text = run(["verify", "--base", "h3", "--auto", "id", "--order", "1", "--deltas", "0..0"])
    assert code == 4 and "semisimple" in text


def test_user_catalog(tmp_path, monkeypatch):
    obj = algebra_to_obj(catalog_get("sl2"))
    obj["name"] = "mysl2"
    (tmp_path / "mysl2.json").write_text(json.dumps(obj))
    monkeypatch.setenv("DKIT_CATALOG_DIR", str(tmp_path))
    code, text = run(["der", "--algebra", "mysl2"])
    assert code == 0 and "dim Der = 3" in text


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dkit", "der", "--algebra", "sl2"], capture_output=True, text=True)
    assert out.returncode == 0 and "dim Der = 3" in out.stdout
