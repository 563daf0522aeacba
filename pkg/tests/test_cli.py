import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrees.cli import main, parse_grid
from symrees.dsl import ParseError, format_ideal_gens, format_workspace, parse_workspace
from symrees.ideal import MonomialIdeal, RingCtx, SparsePoly, format_poly

TRIANGLE = "ring X Y Z\nideal T = X*Y, Y*Z, X*Z\nfamily F = [T] sat m\n"
PLANE = "ring X Y\nideal A = X^2, X*Y\nideal B = Y\nfamily G = [A] sat m\nfamily H = [A, B] sat m\n"


@pytest.fixture
def ws(tmp_path):
    def write(text, name="ws.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- parser --------------------------------------------------------------------

def test_parse_examples():
    w = parse_workspace("ring X Y Z\nideal I = X*Y, Y*Z, X*Z")
    assert w.ideals["I"] == MonomialIdeal(w.ring, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    w = parse_workspace("ring X Y\npoly f = X - Y\nideal I = X^2, Y^2\nfamily F = [I] sat f")
    x, y = SparsePoly.variable(w.ring, 0), SparsePoly.variable(w.ring, 1)
    assert w.families["F"].j_gens == (x - y,)


@pytest.mark.parametrize(
    "text, where, reason",
    [
        ("ring X Y\nideal I = X + Y", "2:13", "sums are not allowed"),
        ("ring X\nideal I = 3*X", "2:11", "coefficients"),
        ("ring X\nideal I = Q", "2:11", "unknown variable"),
        ("ring X\nideal I = X\npoly I = X", "3:6", "duplicate name"),
        ("ring X\npoly f = X - X", "2:10", "zero"),
        ("ring X\nfamily F = [I] sat m", "2:13", "unknown ideal"),
        ("ring X\nideal I = X\nfamily F = [I] sat g", "3:20", "unknown identifier"),
        ("ring X\nideal I = X ;", "2:13", "unexpected character"),
        ("ideal I = X", "1:1", "first declaration"),
        ("ring X\nring Y", "2:1", "only be declared once"),
    ],
)
def test_parse_errors_carry_position(text, where, reason):
    with pytest.raises(ParseError) as info:
        parse_workspace(text)
    assert str(info.value).startswith(where)
    assert reason in str(info.value)


def test_comments_and_blank_lines():
    w = parse_workspace("# header\n\nring X Y  # vars\nideal I = X^3 # cube\n")
    assert w.ideals["I"].gens == ((3, 0),)


def test_round_trip_fixed():
    text = "ring X Y Z\nideal T = X*Y, X*Z, Y*Z\nideal U = 1\nideal Z0 = 0\npoly f = -2/3*Y^2 + X + 3\nfamily F = [T, U] sat f T\nfamily G = [T] sat m\n"
    w = parse_workspace(text)
    assert format_workspace(w) == text
    assert parse_workspace(format_workspace(w)) == w


exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.lists(exps, min_size=1, max_size=4), min_size=1, max_size=3),
    st.lists(st.tuples(exps, st.fractions(max_denominator=5).filter(lambda c: c != 0)), min_size=1, max_size=4),
)
def test_round_trip_random(ideal_gens, terms):
    ring = RingCtx.of("X Y Z")
    lines = ["ring X Y Z"]
    for i, gens in enumerate(ideal_gens):
        ideal = MonomialIdeal(ring, gens)
        lines.append(f"ideal I{i} = {format_ideal_gens(ideal)}")
    f = SparsePoly(ring, terms)
    if not f.is_zero():
        lines.append(f"poly f = {format_poly(f)}")
    names = ", ".join(f"I{i}" for i in range(len(ideal_gens)))
    lines.append(f"family F = [{names}] sat " + ("f m" if not f.is_zero() else "m"))
    w = parse_workspace("\n".join(lines))
    assert w.ring == ring
    assert parse_workspace(format_workspace(w)) == w
    if not f.is_zero():
        assert w.polys["f"] == f


def test_parse_grid():
    assert parse_grid("1..2", 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert parse_grid("1..2,3..3", 2) == [(1, 3), (2, 3)]
    assert parse_grid("1..3", 1) == [(1,), (2,), (3,)]


# -- commands ------------------------------------------------------------------

def test_saturate_prints_xyz(capsys, ws):
    code, out, _ = run(capsys, "saturate", "F", "--n", "2", "-w", ws(TRIANGLE))
    assert code == 0 and "X*Y*Z" in out
    for method in ("planned", "decomposition"):
        assert run(capsys, "saturate", "F", "--n", "2", "--method", method, "-w", ws(TRIANGLE))[1] == out


def test_spread_and_closure_and_reg(capsys, ws):
    path = ws(TRIANGLE)
    assert run(capsys, "spread", "T", "-w", path)[1] == "3\n"
    assert run(capsys, "closure", "T", "-w", path)[1] == "(X*Y, X*Z, Y*Z)\n"
    code, out, _ = run(capsys, "reg", "T", "--betti", "-w", path)
    assert code == 0 and out.endswith("reg = 2\n") and "2,1:1:1,2" in out
    out = run(capsys, "decompose", "T", "-w", path)[1]
    assert sorted(out.split()) == ["(X,", "(X,", "(Y,", "Y)", "Z)", "Z)"]
    out = run(capsys, "newton", "T", "-w", path)[1]
    assert "[1, 1, 1] . x >= 2" in out


def test_table_fit_pipeline(capsys, ws, tmp_path):
    table = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "G", "--grid", "1..12", "--out", str(table), "-w", ws(PLANE))
    assert code == 0
    assert table.read_text().splitlines()[:3] == ["n_1,value", "1,1", "2,3"]
    code, out, _ = run(capsys, "fit", str(table), "--max-degree", "2")
    assert code == 0 and out == "1/2*n^2 + 1/2*n\n"
    code, out, _ = run(capsys, "fit", str(table), "--max-degree", "2", "--json")
    assert json.loads(out)["degree"] == 2
    code, out, _ = run(capsys, "fit", str(table), "--max-degree", "1")
    assert code == 1 and out == "NO_FIT\n"
    code, out, _ = run(capsys, "fitray", str(table), "--max-period", "2", "--max-degree", "2")
    assert code == 0 and "period = 1" in out


def test_quotient_mode(capsys, ws):
    text = "ring X\nideal A = X^2\nideal B = X\nfamily S = [A] sat m\nfamily L = [B] sat m\n"
    code, out, _ = run(capsys, "table", "S", "--grid", "1..4", "--mode", "quotient:L", "-w", ws(text))
    assert code == 0 and out.splitlines()[1:] == ["1,1", "2,2", "3,3", "4,4"]


def test_bounds_alpha_gens_regtable(capsys, ws):
    code, out, _ = run(capsys, "bounds", "G", "--grid", "1..9", "-w", ws(PLANE))
    assert code == 0 and "c: degree == dim (trend): PASS" in out
    path = ws(TRIANGLE)
    code, out, _ = run(capsys, "alpha", "F", "--norm-bound", "6", "--fit-bound", "4", "-w", path)
    assert code == 0 and "alpha = 1" in out
    code, out, _ = run(capsys, "gens", "F", "--up-to", "3", "-w", path)
    assert "n = 2: new generators = 1" in out and "standard graded up to 3: no" in out
    code, out, _ = run(capsys, "regtable", "F", "--grid", "1..3", "--saturated", "-w", path)
    assert code == 0 and "result = PASS" in out


def test_exit_codes(capsys, ws):
    path = ws(TRIANGLE)
    assert run(capsys, "saturate", "Nope", "--n", "1", "-w", path)[0] == 2
    assert run(capsys, "saturate", "F", "--n", "1,2", "-w", path)[0] == 2
    assert run(capsys, "saturate", "F", "--n", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "spread", "T", "-w", ws("ring X\nideal T = X +"))
    assert code == 2 and err.startswith("error: 2:")
    # Computational failure: spread of the unit ideal.
    code, _, err = run(capsys, "spread", "U", "-w", ws("ring X\nideal U = 1\n"))
    assert code == 1 and len(err.strip().splitlines()) == 1


def test_check_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "all", "--trials", "5")
    assert code == 0 and out.count("PASS") == len(out.splitlines())
    assert run(capsys, "check", "--suite", "bogus")[0] == 2


def test_console_script_is_deterministic(tmp_path):
    path = tmp_path / "ws.txt"
    path.write_text(PLANE)
    cmd = [sys.executable, "-m", "symrees.cli", "table", "H", "--grid", "1..3", "-w", str(path)]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"n_1,n_2,value\n")
