import json

import pytest

from eiscurve.cli import SCHEMA, main, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_qexp_eisenstein(capsys):
    code, doc, _ = run(capsys, "qexp", "eisenstein", "--char", "kronecker:-4", "--k", "1",
                       "--kind", "1,phi", "--nmax", "10")
    assert code == 0
    assert doc["schema"] == SCHEMA
    coeffs = doc["result"]["coefficients"]
    assert len(coeffs) == 11 and coeffs[0] == "1/4" and coeffs[1] == 1
    assert doc["result"]["preview"].startswith("(1/4) + (1)*q")


def test_lp_jet(capsys):
    code, doc, _ = run(capsys, "lp", "--char", "kronecker:-4", "--p", "5", "--jet", "3",
                       "--prec", "12")
    assert code == 0
    jet = doc["result"]["jet"]
    assert len(jet) == 3
    assert set(jet[1]) >= {"p", "valuation", "unit_digits", "precision", "text"}


def test_linv_reports_root_choice(capsys):
    code, doc, _ = run(capsys, "linv", "--char", "kronecker:-3", "--p", "7", "--prec", "10")
    assert code == 0
    r = doc["result"]
    assert r["generator"] == [5, 1] and r["class_number"] == 1
    assert r["candidate_residues"] == [r["root_residue"]]


def test_linv_with_unit_poly(capsys):
    code, doc, _ = run(capsys, "linv", "--char", "mod:21:8=3,10=2,order=6", "--p", "13",
                       "--unit-poly", "13,-5,1", "--unit-val", "1", "--prec", "10")
    assert code == 0
    assert doc["result"]["unit"]["coefficients"] == [13, -5, 1]


def test_linv_non_quadratic_without_units(capsys):
    code, _, err = run(capsys, "linv", "--char", "mod:21:8=3,10=2,order=6", "--p", "13")
    assert code == 2
    assert "unit" in err


def test_verify_regular_point_is_precondition_error(capsys):
    code, doc, err = run(capsys, "verify", "gross", "--char", "kronecker:-4", "--p", "7")
    assert code == 2
    assert doc is None
    assert "phi(7) != 1" in err


def test_verify_gross_passes(capsys):
    code, doc, _ = run(capsys, "verify", "gross", "--char", "kronecker:-3", "--p", "7")
    assert code == 0 and doc["passed"]
    check = doc["result"]["checks"][0]
    assert check["digits"] >= check["threshold"] == 25


def test_verify_fails_with_wrong_units(capsys):
    # a unit from the wrong field gives a wrong L-invariant: identity failure
    code, doc, _ = run(capsys, "verify", "gross", "--char", "kronecker:-4", "--p", "5",
                       "--unit-poly", "5,-1,1", "--unit-val", "1", "--prec", "20")
    assert code == 1
    assert doc["passed"] is False


def test_precision_insufficient(capsys):
    code, _, err = run(capsys, "verify", "ferrero-greenberg", "--char", "kronecker:-3",
                       "--p", "13", "--prec", "3")
    # ord_13 zeta'(0) = 1 cannot be certified with three digits
    assert code == 3
    assert "increase precision" in err


def test_hecke_structure(capsys):
    code, doc, _ = run(capsys, "hecke-structure", "--char", "kronecker:-4", "--p", "5",
                       "--mx", "4")
    assert code == 0
    m = doc["result"]["models"]
    assert (m["T"]["fiber_dim"], m["T"]["socle_dim"], m["T"]["gorenstein"]) == (3, 2, False)
    assert m["T'"]["gorenstein"] and m["Tord"]["gorenstein"]
    assert m["congruence_module"]["length"] == 1


def test_overconvergent_check(capsys):
    code, doc, _ = run(capsys, "overconvergent", "--char", "kronecker:-4", "--p", "5",
                       "--nmax", "150", "--check", "all", "--show", "5")
    assert code == 0 and doc["passed"]
    assert len(doc["result"]["f_dag_phi_1"]) == 6
    assert all(c["passed"] for c in doc["result"]["checks"])


def test_family_and_zeta(capsys):
    code, doc, _ = run(capsys, "family", "cuspidal", "--char", "kronecker:-4", "--p", "5",
                       "--nmax", "20", "--prec", "10")
    assert code == 0 and len(doc["result"]["coefficients"]) == 21
    code, doc, _ = run(capsys, "zeta-series", "--char", "kronecker:-4", "--p", "5",
                       "--mx", "4", "--prec", "10")
    assert code == 0 and len(doc["result"]["coefficients"]) == 4


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# test config\np = 5\nchar = kronecker:-4\nprec = 12\nmx = 3\n")
    assert read_config(cfg)["prec"] == 12
    code, doc, _ = run(capsys, "zeta-series", "--config", str(cfg), "--prec", "9")
    assert code == 0
    assert doc["config"]["prec"] == 9 and doc["config"]["mx"] == 3
    assert doc["config"]["nmax"] == 1000  # default


def test_reports_are_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "relation", "--char", "kronecker:-4", "--p", "5", "--lmax", "50",
                     "--prec", "15", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "lp", "--config", str(cfg), "--p", "5")
    assert code == 2 and "unknown key" in err


def test_requires_prime(capsys):
    with pytest.raises(SystemExit):
        main(["nonsense"])
    code, _, _ = run(capsys, "lp", "--char", "kronecker:-4", "--p", "9")
    assert code == 2
