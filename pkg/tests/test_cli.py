import json

import pytest

from monoidforms.catalog import build_corank0, build_mma
from monoidforms.cli import main
from monoidforms.etale import EtaleAlgebra
from monoidforms.exactpoly import Poly
from monoidforms.monoidcore import MonoidStructure, monoid_from_dict, monoid_to_dict, monoid_to_json

from _forms import form


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


# -- catalog ---------------------------------------------------------------------------------

def test_catalog_dim1(capsys):
    code, env = run_json(capsys, "catalog", "--dim", "1")
    assert code == 0 and env["status"] == "ok"
    assert [e["monoid"]["label"] for e in env["payload"]] == ["A", "M"]


def test_catalog_dim2_bound0(capsys):
    code, env = run_json(capsys, "catalog", "--dim", "2", "--bound", "0")
    assert [e["family"] for e in env["payload"]] == ["2A", "M+A", "M+M"]


def test_catalog_dim3_all_rows(capsys):
    code, env = run_json(capsys, "catalog", "--dim", "3", "--bound", "1", "--d", "2", "--cubic=-2,0,0,1")
    assert code == 0
    families = {e["family"] for e in env["payload"]}
    assert len(families) == 8


def test_catalog_with_negative_d(capsys):
    code, env = run_json(capsys, "catalog", "--dim", "2", "--d=-1", "--d", "3/2")
    labels = [e["monoid"]["label"] for e in env["payload"]]
    assert labels[-2:] == ["M(Q(sqrt(-1)))", "M(Q(sqrt(3/2)))"]


@pytest.mark.parametrize("argv", [["--dim", "4"], ["--dim", "2", "--d", "4"], ["--dim", "3", "--cubic", "1,1"],
                                  ["--dim", "2", "--bound=-1"], ["--dim", "2", "--d", "x"]])
def test_catalog_usage_errors(capsys, argv):
    code, env = run_json(capsys, "catalog", *argv)
    assert code == 2 and env["status"] == "error"


def test_catalog_deterministic(capsys, tmp_path):
    argv = ["catalog", "--dim", "3", "--bound", "2", "--d", "2", "--d", "-7", "--cubic", "1,1,0,1"]
    a = run(capsys, *argv, "--out", str(tmp_path / "a.json"))
    b = run(capsys, *argv, "--out", str(tmp_path / "b.json"))
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_catalog_output_reverifies(capsys, tmp_path):
    out = tmp_path / "cat.json"
    run(capsys, "catalog", "--dim", "3", "--bound", "1", "--d", "5", "--out", str(out))
    code, env = run_json(capsys, "verify", "--in", str(out))
    assert code == 0
    assert all(r["associative"] and r["commutative"] and r["unital"] for r in env["payload"])


def test_catalog_unwritable_out(capsys, tmp_path):
    code, env = run_json(capsys, "catalog", "--dim", "1", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2


# -- verify ----------------------------------------------------------------------------------

def test_verify_broken_unit(capsys, tmp_path):
    m = MonoidStructure(2, form(2, "x1*y1", "x2+y2+1"), (1, 0))
    path = write(tmp_path, "m.json", monoid_to_dict(m))
    code, env = run_json(capsys, "verify", "--in", path)
    assert code == 1 and env["status"] == "error"
    assert env["payload"]["unital"] is False
    assert Poly.from_json(env["payload"]["witness"]) == Poly.one(4)


def test_verify_example_cubic_transcription(capsys, tmp_path):
    m = MonoidStructure(
        3,
        form(3, "x1*y1 - x2*y3 - x3*y2", "x1*y2 + x2*y1 - x2*y3 - x3*y2 - x3*y3", "x1*y3 + x2*y2 + x3*y1 - x3*y3"),
        (1, 0, 0),
    )
    path = write(tmp_path, "m.json", monoid_to_dict(m))
    code, env = run_json(capsys, "verify", "--in", path)
    assert code == 0
    assert env["payload"] == {"label": None, "associative": True, "commutative": True,
                              "unital": True, "witness": None}


def test_verify_pretty(capsys, tmp_path):
    m = MonoidStructure(1, form(1, "x1 + y1 + 1"), (0,), label="bad")
    code, out = run(capsys, "verify", "--in", write(tmp_path, "m.json", monoid_to_dict(m)), "--pretty")
    assert code == 1
    assert out.splitlines()[0] == "bad: assoc=True comm=True unit=False witness: 1"


def test_verify_parse_error_location(capsys, tmp_path):
    data = monoid_to_dict(build_corank0(EtaleAlgebra.split(2)))
    data["mult"][1]["terms"][0]["exps"] = [0, 1, 0]
    code, env = run_json(capsys, "verify", "--in", write(tmp_path, "m.json", data))
    assert code == 2
    assert env["diagnostics"][0].startswith("$.mult[1].terms[0].exps")


def test_verify_invalid_json_and_missing_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    assert run(capsys, "verify", "--in", str(p))[0] == 2
    assert run(capsys, "verify", "--in", str(tmp_path / "nope.json"))[0] == 2


# -- qpoly -----------------------------------------------------------------------------------

def test_qpoly_1_1(capsys):
    code, env = run_json(capsys, "qpoly", "--b", "1", "--c", "1")
    assert code == 0
    assert Poly.from_json(env["payload"]) == Poly(4, {(0, 1, 0, 1): 2})


def test_qpoly_2_5(capsys):
    code, env = run_json(capsys, "qpoly", "--b", "2", "--c", "5")
    q = Poly.from_json(env["payload"])
    assert code == 0 and q.has_integer_coefficients() and not q.is_zero()


@pytest.mark.parametrize("b, c", [("0", "1"), ("3", "2"), ("-1", "2")])
def test_qpoly_rejects(capsys, b, c):
    assert run(capsys, "qpoly", f"--b={b}", f"--c={c}")[0] == 2


# -- twist -----------------------------------------------------------------------------------

def test_twist_m_plus_m(capsys, tmp_path):
    base = write(tmp_path, "mm.json", monoid_to_dict(build_corank0(EtaleAlgebra.split(2))))
    split = write(tmp_path, "s.json", {"d": "5", "pairs": [[1, 2]], "dim": 2})
    out = tmp_path / "t.json"
    code, env = run_json(capsys, "twist", "--in", base, "--splitting", split, "--out", str(out))
    assert code == 0
    m = monoid_from_dict(env["payload"])
    assert m.mult == form(2, "x1*y1 + 5*x2*y2", "x1*y2 + x2*y1")
    assert run(capsys, "verify", "--in", str(out))[0] == 0


def test_twist_mma_c1_d2(capsys, tmp_path):
    base = write(tmp_path, "b.json", monoid_to_dict(build_mma(1, 1)))
    split = write(tmp_path, "s.json", {"d": "2", "pairs": [[1, 2]], "dim": 3})
    code, env = run_json(capsys, "twist", "--in", base, "--splitting", split)
    assert code == 0
    assert monoid_from_dict(env["payload"]).mult == form(
        3, "x1*y1 + 2*x2*y2", "x1*y2 + x2*y1", "(x1**2 - 2*x2**2)*y3 + (y1**2 - 2*y2**2)*x3"
    )


def test_twist_identity(capsys, tmp_path):
    m = build_corank0(EtaleAlgebra.split(2))
    base = write(tmp_path, "b.json", monoid_to_dict(m))
    split = write(tmp_path, "s.json", {"d": "3", "pairs": [], "dim": 2})
    out = tmp_path / "o.json"
    code, _ = run_json(capsys, "twist", "--in", base, "--splitting", split, "--out", str(out))
    assert code == 0
    twisted = json.loads(out.read_text())
    assert twisted["mult"] == json.loads(monoid_to_json(m))["mult"]


def test_twist_rationality_failure(capsys, tmp_path):
    base = write(tmp_path, "b.json", monoid_to_dict(build_mma(0, 1)))
    split = write(tmp_path, "s.json", {"d": "2", "pairs": [[1, 2]], "dim": 3})
    code, env = run_json(capsys, "twist", "--in", base, "--splitting", split)
    assert code == 1
    assert env["diagnostics"][0].startswith("RationalityFailure")


def test_twist_dimension_mismatch(capsys, tmp_path):
    base = write(tmp_path, "b.json", monoid_to_dict(build_mma(0, 1)))
    split = write(tmp_path, "s.json", {"d": "2", "pairs": [[1, 2]], "dim": 2})
    assert run(capsys, "twist", "--in", base, "--splitting", split)[0] == 2


# -- autcheck --------------------------------------------------------------------------------

def test_autcheck_plain_equal(capsys):
    code, env = run_json(capsys, "autcheck", "--family", "plain", "--b", "1", "--c", "1", "--matrix", "1,1;1,2")
    assert code == 0
    assert env["payload"] == {"family": "plain", "params": {"b": 1, "c": 1},
                              "matrix": [["1", "1"], ["1", "2"]], "regular": True, "expected": True}


def test_autcheck_plain_beta(capsys):
    code, env = run_json(capsys, "autcheck", "--family", "plain", "--b", "1", "--c", "2", "--matrix", "1,1;0,1")
    assert code == 0
    assert env["payload"]["regular"] is False and env["payload"]["expected"] is False


def test_autcheck_deformed(capsys):
    code, env = run_json(capsys, "autcheck", "--family", "deformed", "--b", "1", "--c", "2",
                         "--matrix", "1,0;1,1")
    assert code == 0 and env["payload"]["regular"] is True
    code, env = run_json(capsys, "autcheck", "--family", "deformed", "--b", "1", "--c", "2",
                         "--matrix", "1,0;1,2")
    assert code == 0 and env["payload"]["regular"] is False


def test_autcheck_corank1(capsys):
    code, env = run_json(capsys, "autcheck", "--family", "corank1", "--bvec", "1,1,2",
                         "--matrix", "0,1,0;1,0,0;0,0,1", "--z=-3")
    assert code == 0 and env["payload"]["regular"] is True
    code, env = run_json(capsys, "autcheck", "--family", "corank1", "--bvec", "1,2", "--matrix", "0,1;1,0")
    assert code == 0 and env["payload"]["regular"] is False


def test_autcheck_pretty(capsys):
    code, out = run(capsys, "autcheck", "--family", "plain", "--b", "1", "--c", "2", "--matrix", "1,1;0,1",
                    "--pretty")
    assert "x2 -> x2 + x1^-1*x3" in out
    assert out.splitlines()[-1] == "regular=False expected=False"


@pytest.mark.parametrize(
    "argv",
    [
        ["--family", "plain", "--b", "1", "--matrix", "1,0;0,1"],
        ["--family", "plain", "--b", "2", "--c", "1", "--matrix", "1,0;0,1"],
        ["--family", "plain", "--b", "1", "--c", "1", "--matrix", "1,2;2,4"],
        ["--family", "plain", "--b", "1", "--c", "1", "--matrix", "1,0,0;0,1,0;0,0,1"],
        ["--family", "corank1", "--matrix", "1"],
        ["--family", "corank1", "--bvec", "1,1", "--matrix", "1"],
        ["--family", "deformed", "--b", "0", "--c", "1", "--matrix", "1,0;0,1"],
        ["--family", "plain", "--b", "1", "--c", "1", "--matrix", "1,0;0"],
    ],
)
def test_autcheck_usage_errors(capsys, argv):
    assert run(capsys, "autcheck", *argv)[0] == 2


# -- norm / iso ------------------------------------------------------------------------------

def test_norm_quadratic(capsys, tmp_path):
    path = write(tmp_path, "a.json", {"factors": [{"minpoly_coeffs": ["-3", "0", "1"]}]})
    code, env = run_json(capsys, "norm", "--in", path)
    assert code == 0
    assert Poly.from_json(env["payload"]) == Poly(2, {(2, 0): 1, (0, 2): -3})
    assert env["diagnostics"] == ["factor 1: degree 2, discriminant 12"]


def test_norm_rejects_reducible(capsys, tmp_path):
    path = write(tmp_path, "a.json", {"factors": [{"minpoly_coeffs": ["-4", "0", "1"]}]})
    assert run(capsys, "norm", "--in", path)[0] == 2


def test_iso(capsys):
    code, env = run_json(capsys, "iso", "--d", "8", "--d", "2")
    assert code == 0 and env["payload"] == {"d1": "8", "d2": "2", "isomorphic": True}
    code, env = run_json(capsys, "iso", "--d", "2", "--d", "3")
    assert env["payload"]["isomorphic"] is False
    assert run(capsys, "iso", "--d", "4", "--d", "2")[0] == 2
    assert run(capsys, "iso", "--d", "2")[0] == 2


def test_missing_subcommand():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "monoidforms", "qpoly", "--b", "1", "--c", "2", "--pretty"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "3*x1*x2*y2^2 + 3*x2^2*y1*y2"
