import io
from pathlib import Path

import pytest

from uag.cli import run
from uag.files import load_algebra, parse_algebra
from uag.report import Report, parse_machine

DATA = Path(__file__).resolve().parent.parent / "data"


def uag(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = run([str(a) for a in argv], out, err)
    return code, report, out.getvalue(), err.getvalue()


def test_solve_prints_the_plane():
    code, rep, text, _ = uag("solve", "--algebra", DATA / "L2.alg", "--system", DATA / "sq.sys")
    assert code == 0
    assert rep.result["count"] == 4
    assert "points: (4)" in text


def test_components_and_domain():
    code, rep, _, _ = uag("components", "--algebra", DATA / "L2.alg", "--system", DATA / "sq.sys")
    assert code == 0 and rep.result["count"] == 2
    code, rep, _, _ = uag("domain", "--algebra", DATA / "F2ring.alg")
    assert code == 0 and rep.verdict == "true"
    code, rep, _, _ = uag("domain", "--algebra", "builtin:Ln:2")
    assert code == 0 and rep.verdict == "false"


def test_exit_codes():
    assert uag("solve", "--algebra", DATA / "missing.alg", "--system", DATA / "sq.sys")[0] == 3
    assert uag("frobnicate")[0] == 2
    assert uag("solve", "--system", DATA / "sq.sys")[0] == 2
    assert uag("nat", "solve", "--system", DATA / "le.sys")[0] == 3
    code, rep, _, _ = uag("solve", "--algebra", "builtin:Ln:3", "--system", DATA / "sq.sys", "--tuple-cap", "4")
    assert code == 4 and rep.verdict == "unknown"


def test_bad_input_reports_a_position(tmp_path):
    bad = tmp_path / "bad.sys"
    bad.write_text("vars: x\neq: x * = x\n")
    code, _, _, err = uag("solve", "--algebra", DATA / "L2.alg", "--system", bad)
    assert code == 3
    assert "line 2" in err


COMMANDS = [
    ("solve", "--algebra", DATA / "LZ2.alg", "--system", DATA / "le.sys"),
    ("radical", "--algebra", DATA / "Z2.alg", "--system", DATA / "sum0.sys", "--equation", "x = y"),
    ("closure", "--algebra", DATA / "L2.alg", "--points", "1,0", "--dim", "2"),
    ("algebraic", "--algebra", DATA / "LZ2.alg", "--points", "a0,a0; a1,a1"),
    ("coord", "--algebra", DATA / "L2.alg", "--system", DATA / "sq.sys"),
    ("irreducible", "--algebra", DATA / "L2.alg", "--system", DATA / "sq.sys"),
    ("equiv", "--algebra", DATA / "LZ2.alg", "--system", DATA / "le.sys", "--other", DATA / "sq.sys"),
    ("homs", "--source", "builtin:Zn:4", "--target", "builtin:Zn:2"),
    ("embed", "--source", "builtin:Zn:4", "--target", "builtin:Zn:8"),
    ("approx", "--algebra", "builtin:Ln:2", "--other", "builtin:Ln:5"),
    ("discr", "--algebra", "builtin:Ln:3", "--other", "builtin:Ln:2"),
    ("geomeq", "--algebra", "builtin:LZn:2", "--other", "builtin:RBnm:2:2"),
    ("codomain", "--algebra", "builtin:Ln:2", "--n-max", "2"),
    ("diophantize", "--algebra", DATA / "L2.alg"),
    ("abelian", "snf", "--matrix", "2 4; 6 8"),
    ("abelian", "prefix", "--matrix", "; ".join(f"{2 * i + 1} {2 * i + 2}" for i in range(11))),
    ("abelian", "suboplus", "--group", "Z^2 + Z_8 + Z_3 + Z_3"),
    ("abelian", "coord", "--group", "Z^2 + Z_8 + Z_3 + Z_3", "--other", "Z + Z_9"),
    ("nat", "solve", "--system", DATA / "nat.sys"),
    ("unar", "solve", "--system", DATA / "unar.sys"),
    ("bicyclic", "mul", "--left", "0,2", "--right", "1,0"),
    ("bicyclic", "witness", "--n", "3"),
    ("formula", "check", "--algebra", "builtin:Ln:3", "--formula", DATA / "order.fml"),
    ("formula", "sigma", "--group", "Z_2 + Z_3", "--p-max", "3", "--n-max", "2"),
    ("formula", "phi", "--group", "Z_2 + Z_2", "--p", "2", "--k", "1", "--n", "2"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(map(str, a[:2])))
def test_machine_mode_round_trips_and_is_deterministic(argv):
    code, rep, text, _ = uag(*argv, "--machine")
    assert code == 0
    assert parse_machine(text) == rep
    assert parse_machine(text).to_machine() == text
    again = uag(*argv, "--machine")[2]
    assert again == text
    human = uag(*argv)[2]
    assert human == uag(*argv)[2]
    assert human.startswith("command: ")


def test_selected_answers():
    answers = {
        "radical": "true",
        "algebraic": "true",
        "equiv": "true",
        "embed": "true",
        "approx": "true",
        "discr": "true",
        "geomeq": "false",
        "codomain": "false",
    }
    for argv in COMMANDS:
        if argv[0] in answers:
            assert uag(*argv)[1].verdict == answers[argv[0]], argv
    rep = uag("unar", "solve", "--system", DATA / "unar.sys")[1]
    assert rep.verdict == "false" and rep.result["witness"].split(" = ")[1] in ("x", "y")
    rep = uag("radical", "--algebra", DATA / "Z2.alg", "--system", DATA / "sum0.sys", "--equation", "x = y")[1]
    assert rep.result["in_congruent_closure"] is False
    rep = uag("nat", "solve", "--system", DATA / "nat.sys")[1]
    assert rep.result["points"] == [[0, 0, 1], [1, 1, 0]]
    rep = uag("bicyclic", "witness", "--n", "3")[1]
    assert rep.verdict == "true" and rep.result["final"] == "b^4a^4"


def test_diophantize_writes_a_loadable_file(tmp_path):
    target = tmp_path / "d.alg"
    code, _, _, _ = uag("diophantize", "--algebra", DATA / "L2.alg", "--output", target)
    assert code == 0
    d = load_algebra(str(target))
    assert d.language.constants == ("c0", "c1")
    assert parse_algebra(target.read_text()).same_as(d)


def test_report_verdicts_are_three_valued():
    assert Report("x", True).verdict == "true"
    with pytest.raises(ValueError):
        Report("x", "maybe")
