import json

import pytest

from algvar.catalog.data import R_G2
from algvar.cli import main


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {
        "l03.alg": "dim 3;\ne1*e2 = e2;\ne1*e3 = 2*e3;\n",
        "w.txt": "E1 = e1; E2 = e2; E3 = t*e3;\n",
        "r.txt": R_G2 + "\n",
        "bad.alg": "dim 3;\ne1*e5 = e2;\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_check_holds(capsys, files):
    code, out = run(capsys, "check", files["l03.alg"], "--delta", "2")
    assert code == 0 and "holds" in out.out


def test_check_fails(capsys, files):
    code, out = run(capsys, "check", files["l03.alg"], "--identity", "lie")
    assert code == 1 and "fails" in out.out


def test_symbolic_delta_on_catalog_id(capsys):
    assert run(capsys, "check", "G06^d", "--delta", "symbolic")[0] == 0


def test_derive_json(capsys):
    code, out = run(capsys, "derive", "G05^a", "--report", "json")
    data = json.loads(out.out)
    assert code == 0 and data["der_dim"] == 2 and data["orbit_dimension"] == 7


def test_profile(capsys):
    code, out = run(capsys, "profile", "N01")
    assert code == 0 and "der_dim = 6" in out.out


def test_iso_found(capsys):
    code, out = run(capsys, "iso", "G05^2", "G05^1/2", "--seed", "1")
    assert code == 0


def test_iso_refuted_with_certificate(capsys):
    code, out = run(capsys, "iso", "N02^2", "N02^3", "--report", "json")
    assert code == 1
    assert "certificate" in json.loads(out.out)


def test_degenerate(capsys, files):
    assert run(capsys, "degenerate", "N13", "N12", "--witness", files["w.txt"])[0] == 0
    code, out = run(capsys, "degenerate", "N13", "G07", "--witness", files["w.txt"])
    assert code == 1 and "mismatch" in out.out


def test_nondegenerate(capsys, files):
    code, out = run(capsys, "nondegenerate", "N13", "G12^-1", "--closed-set", files["r.txt"], "--report", "json")
    assert code == 0
    assert json.loads(out.out)["status"] == "verified"


def test_catalog_list_and_show(capsys):
    code, out = run(capsys, "catalog", "list", "--kind", "lie")
    assert code == 0 and len(out.out.strip().splitlines()) == 3
    code, out = run(capsys, "catalog", "show", "N13")
    assert code == 0 and "e3*e3 = e3;" in out.out


def test_theorem(capsys):
    code, out = run(capsys, "theorem", "G0")
    assert code == 0 and "[ERRATUM]" in out.out


def test_theorem_json_is_deterministic(capsys):
    first = run(capsys, "theorem", "G2", "--report", "json")[1].out
    second = run(capsys, "theorem", "G2", "--report", "json")[1].out
    assert first == second
    assert all(item["status"] != "fail" for item in json.loads(first))


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "/nonexistent.alg"),
        ("bogus",),
        ("catalog", "show", "Z99"),
        ("derive",),
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_exit(capsys, files):
    code, out = run(capsys, "check", files["bad.alg"])
    assert code == 2 and "line 2" in out.err
