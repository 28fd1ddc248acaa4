import io
import json
import subprocess
import sys

import pytest

from deltaexp.cli import main, parse_combination, resolve_config, build_parser
from deltaexp.ellcurve import builtin_curves
from deltaexp.errors import ParseError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    rows = [json.loads(line) for line in out.getvalue().splitlines() if line.startswith("{")]
    return code, rows, out.getvalue(), err.getvalue()


def test_curve_info():
    code, rows, _, _ = run("curve-info", "0,1")
    assert code == 0
    r = rows[0]
    assert r["j"] == "0" and r["cm"]["disc"] == -3 and r["torsion_order"] == 6
    code, rows, _, _ = run("curve-info", "-1,0")
    assert rows[0]["j"] == "1728" and rows[0]["cm"]["disc"] == -4


def test_singular_curve_is_a_usage_error():
    code, rows, _, err = run("curve-info", "0,0")
    assert code == 2 and "SingularCurve" in err


def test_primes_cl_filter():
    code, rows, _, _ = run("primes", "-1,0", "--range", "5", "50", "--filter", "CL")
    assert code == 0
    # every p = 1 mod 4 in the range, 5 included
    assert [r["p"] for r in rows] == [5, 13, 17, 29, 37, 41]


def test_primes_anomalous_and_empty():
    code, rows, _, _ = run("primes", "11a1", "--range", "5", "200", "--filter", "anomalous")
    assert [r["p"] for r in rows] == [5]
    code, rows, out, _ = run("primes", "11a1", "--range", "50", "40")
    assert code == 0 and rows == []


def test_psi_combinations():
    code, rows, _, _ = run("psi", "14a1", "13", "(327,6048) + 3*(75,-756)")
    assert code == 0 and rows[0]["in_pdiv"]
    code, rows, _, _ = run("psi", "0,1", "7", "(2,3) + 2*(0,1)")
    assert rows[0]["in_pdiv"] and rows[0]["valuation"] >= rows[0]["precision"]
    code, rows, _, _ = run("psi", "37a1", "5", "5*G1")
    assert rows[0]["in_pdiv"]
    code, rows, _, _ = run("psi", "37a1", "5", "G1")
    assert not rows[0]["in_pdiv"] and rows[0]["residue"] == 4


def test_psi_errors():
    assert run("psi", "37a1", "37", "G1")[0] == 2
    assert run("psi", "37a1", "5", "G7")[0] == 2
    assert run("psi", "37a1", "5", "(1,1)")[0] == 2
    assert run("psi", "37a1", "5", "G1 G1")[0] == 2


def test_parse_combination():
    E = builtin_curves()["389a1"]
    terms = parse_combination("2*G1 - G2 + (-24, 324) + O", E)
    assert [k for _, k in terms] == [2, -1, 1, 1]
    with pytest.raises(ParseError):
        parse_combination("", E)


def test_verify_exit_codes():
    code, rows, _, _ = run("verify", "--curve", "11a1", "-p", "7")
    assert code == 0 and len(rows) == 6 and all(r["verdict"] == "pass" for r in rows)
    assert all("millis" not in r for r in rows)
    code, rows, _, _ = run("verify", "--curve", "11a1", "-p", "7", "--mutate-ap")
    assert code == 1
    bad = {r["identity"]: r["first_discrepancy"] for r in rows if r["verdict"] == "fail"}
    assert {"floare", "floarenoua", "fruct4", "eigen"} <= set(bad)
    assert run("verify", "--identity", "nope")[0] == 2
    assert run("verify", "--curve", "11a1", "-p", "9")[0] == 2


def test_verify_is_deterministic_and_parallel_safe():
    a = run("verify", "--curve", "37a1", "--identity", "floare,theta")[2]
    b = run("verify", "--curve", "37a1", "--identity", "floare,theta")[2]
    c = run("verify", "--curve", "37a1", "--identity", "floare,theta", "--jobs", "2")[2]
    assert a == b == c


def test_bound():
    assert run("bound", "11", "5", "0")[1][0]["bound"] == "13200"
    assert run("bound", "11", "5", "1")[1][0]["bound"] == "37200"
    assert run("bound", "4", "5", "0")[0] == 2


def test_table_format():
    code, _, out, _ = run("bound", "11", "5", "0", "--format", "table")
    assert code == 0 and "13200" in out and not out.startswith("{")


def test_usage_errors():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("bound", "11", "5", "0", "--precision", "2")[0] == 2


def test_config_precedence(tmp_path):
    cfg = tmp_path / "d.cfg"
    cfg.write_text("# defaults\nprecision = 5\ntrunc = 120\nformat = table\n")
    args = build_parser().parse_args(["--config", str(cfg), "bound", "11", "5", "0"])
    c = resolve_config(args, environ={})
    assert (c.precision, c.trunc, c.format) == (5, 120, "table")
    c = resolve_config(args, environ={"DELTAEXP_PRECISION": "7"})
    assert c.precision == 7 and c.trunc == 120
    args = build_parser().parse_args(["--config", str(cfg), "bound", "11", "5", "0", "--precision", "9"])
    assert resolve_config(args, environ={"DELTAEXP_PRECISION": "7"}).precision == 9
    cfg.write_text("bogus = 1\n")
    with pytest.raises(ParseError):
        resolve_config(args, environ={})


def test_curve_file_flag(tmp_path):
    f = tmp_path / "c.csv"
    f.write_text("label,a4,a6\nmine,-1,0\n")
    code, rows, _, _ = run("--curves", str(f), "curve-info", "mine")
    assert code == 0 and rows[0]["curve"] == "mine"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "deltaexp", "bound", "11", "5", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"bound": "13200"' in proc.stdout
