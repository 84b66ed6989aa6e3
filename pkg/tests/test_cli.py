import json
import subprocess
import sys

import pytest

from corpus import EXPRESSIONS
from oracles import series_coeffs
from oreseries import OreRing, SkewPoly
from oreseries.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("src", EXPRESSIONS)
def test_print_round_trip(capsys, src):
    code, doc = run_json(capsys, "mul", src, "--q", "2", "--prec", "16")
    assert code == 0
    ring = OreRing("q", 2, 16)
    printed = doc["result"]["product"]["text"]
    assert ring.parse(printed) == ring.parse(src)
    assert SkewPoly.from_json(ring, doc["result"]["product"]) == ring.parse(src)


def test_extract_json(capsys):
    code, doc = run_json(capsys, "extract", "1+X+theta+X*theta^2", "--q", "1", "--prec", "4")
    assert code == 0
    ring = OreRing("q", 1, 4)
    div = SkewPoly.from_json(ring, doc["result"]["divisor"])
    assert series_coeffs(div.coeff(0), 4) == [1, 2, 4, 12]
    assert div.coeff(1).coeff(0) == 1 and div.degree == 1


def test_commute_json(capsys):
    code, doc = run_json(capsys, "commute", "--c", "theta+1", "--b", "1+X*theta", "--q", "2", "--prec", "4")
    assert code == 0
    ring = OreRing("q", 2, 4)
    res = doc["result"]
    cp, bp = SkewPoly.from_json(ring, res["c_prime"]), SkewPoly.from_json(ring, res["b_prime"])
    assert cp == ring.parse("theta + 1 + X + 5*X^2 + 49*X^3")
    assert bp == ring.parse("(1 - X - 4*X^2 - 40*X^3) + 2*X*theta")
    assert all(res["checks"].values())


def test_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "commute", "--c", "theta+1", "--b", "1+X*theta", "--prec", "8", "--json")
    path = tmp_path / "w.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and out.startswith("verified")
    doc = json.loads(path.read_text())
    doc["result"]["c_prime"]["coeffs"]["0"]["coeffs"][1] = "7"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and out.startswith("NOT verified")


@pytest.mark.parametrize(
    "argv",
    [
        ["extract", "1+X+theta+X*theta^2", "--prec", "8"],
        ["factor", "(1+X*theta)*(theta+1)"],
        ["ext", "theta", "theta+1"],
        ["similar", "theta+1", "theta+1", "--bound", "1"],
        ["gcrd", "theta+1", "theta"],
        ["divmod", "theta^2+1", "theta+X"],
        ["classify", "2*theta^2+X"],
    ],
)
def test_verify_accepts_outputs(capsys, tmp_path, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    path = tmp_path / "out.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0, out


def test_human_outputs(capsys):
    code, out, _ = run(capsys, "classify", "3 + X*theta", "--q", "1", "--prec", "8")
    assert code == 0 and "shape: B" in out and "(3)" in out
    code, out, _ = run(capsys, "co", "1+X*theta")
    assert code == 0
    code, out, _ = run(capsys, "order", "--q", "-1")
    assert code == 0 and "2" in out
    code, out, _ = run(capsys, "lift", "X^-2*theta + X^-1")
    assert code == 0 and "2" in out
    code, out, _ = run(capsys, "ext", "theta", "theta")
    assert code == 0 and "not a proof" in out
    code, out, _ = run(capsys, "divmod", "2*X*theta^2+(1+X)*theta+1", "(1-X)+2*X*theta", "--side", "left", "--in-T")
    assert code == 0


def test_options_after_or_before_command(capsys):
    a = run(capsys, "--q", "3", "mul", "theta*X")[1]
    b = run(capsys, "mul", "theta*X", "--q", "3")[1]
    assert a == b and "3*X" in a


def test_audit(capsys):
    code, doc = run_json(capsys, "audit", "--samples", "10")
    assert code == 0 and doc["result"]["failed"] == 0


@pytest.mark.parametrize(
    "argv,code",
    [
        (["mul", "theta^"], 2),
        (["mul", "X", "--field", "banana"], 2),
        (["mul", "X", "--q", "X"], 2),
        (["mul", "X", "--prec", "2"], 2),
        (["nosuch"], 2),
        (["divmod", "theta", "X*theta"], 1),
        (["extract", "1+X*theta"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    if argv == ["nosuch"]:
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == code
        return
    assert run(capsys, *argv)[0] == code


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "mul", "1 + * X")
    assert code == 2 and "position 4" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oreseries", "mul", "theta*X", "--q", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "2*X" in proc.stdout
