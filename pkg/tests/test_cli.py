import json
from pathlib import Path

import pytest

from catlab import io
from catlab.asphericity import NONEMPTY
from catlab.cli import BUDGET, FALSE, INVALID, OK, main
from catlab.core import CatDiagram, discrete, identity_functor, point, simplex, terminal, to_terminal
from catlab.fibrations import is_fibration, is_smooth
from catlab.generate import exhaustive, functor_list

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def files(tmp_path):
    d1 = simplex(1)
    paths = {}
    objs = {
        "e": terminal(), "d1": d1, "disc": discrete(2), "id": identity_functor(d1), "p0": point(d1, "0"), "p1": point(d1, "1"),
        "bang": to_terminal(d1), "const": CatDiagram.constant(d1, terminal()),
        "F": CatDiagram.from_maps(d1, {"0": terminal(), "1": d1}, {"0->1": point(d1, "0")}),
    }
    for k, v in objs.items():
        paths[k] = str(tmp_path / f"{k}.json")
        io.write(paths[k], v)
    return paths


def test_validate(files, tmp_path, capsys):
    assert main(["validate", files["e"]]) == OK
    assert "valid category" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "category", "objects": [', encoding="utf-8")
    assert main(["validate", str(bad)]) == INVALID
    assert main(["validate", str(tmp_path / "missing.json")]) == INVALID


def test_bad_usage_is_invalid():
    assert main(["frobnicate"]) == INVALID
    assert main(["construct", "op"]) == INVALID


def test_construct(files, tmp_path):
    out = tmp_path / "g.json"
    assert main(["construct", "grothendieck", files["F"], "-o", str(out)]) == OK
    C = io.read(str(out)).payload
    assert (C.n_objects, C.n_morphisms) == (3, 6)
    assert main(["construct", "slice", files["id"], "1", "-o", str(out)]) == OK
    assert io.read(str(out)).payload.objects == ("0|0->1", "1|id_1")
    assert main(["construct", "pullback", files["p0"], files["id"], "-o", str(out)]) == OK
    assert io.read(str(out)).kind == "square"
    assert main(["construct", "slice", files["id"], "7"]) == INVALID
    assert main(["construct", "product", files["e"]]) == INVALID


def test_check_exit_codes(files, capsys):
    assert main(["check", "final-object", files["d1"]]) == OK
    assert main(["check", "final-object", files["disc"]]) == FALSE
    assert main(["check", "fibration", files["bang"]]) == OK
    assert main(["check", "right-adjoint", files["p0"]]) == OK
    assert main(["check", "right-adjoint", files["p1"]]) == FALSE
    assert main(["check", "aspheric", files["disc"], "--structure", "nonempty"]) == OK
    assert main(["check", "smooth", files["p0"]]) == OK
    assert main(["check", "smooth", files["p1"]]) == FALSE
    capsys.readouterr()
    assert main(["check", "fibration", files["e"]]) == INVALID


def test_check_smooth_without_a_decision_exits_3(tmp_path, capsys):
    u = next(u for A in exhaustive(1, 3) for B in exhaustive(1, 3) for u in functor_list(A, B)
             if not is_fibration(u, check=False) and is_smooth(NONEMPTY, u, (2, 4)).status == "Evidence")
    path = tmp_path / "u.json"
    io.write(str(path), u)
    assert main(["check", "smooth", str(path), "--structure", "nonempty"]) == BUDGET
    assert "not decided" in capsys.readouterr().out


def test_kan_verbs(files, tmp_path, capsys):
    out = str(tmp_path / "o.json")
    assert main(["kan", "theta", files["id"], "-o", out]) == OK
    assert io.read(out).kind == "diagram"
    assert main(["kan", "shriek", files["p0"], files["e"]]) == INVALID
    assert main(["kan", "epsilon", files["id"], files["F"], "1", "-o", out]) == OK
    assert main(["kan", "verify-cartint", files["p0"], files["F"]]) == OK
    assert main(["kan", "verify-lemmeclef", files["const"], files["F"], files["e"]]) == INVALID
    ident = str(tmp_path / "ide.json")
    io.write(ident, identity_functor(terminal()))
    assert main(["kan", "verify-lemmeclef", files["const"], files["F"], ident, files["p0"]]) == OK
    assert "conclusion: true" in capsys.readouterr().out


def test_verify_writes_reports(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["verify", "--suite", "carfibr-equivalence", "--max-objects", "2", "--max-morphisms", "3",
                 "--report", str(rep)]) == OK
    assert json.loads(rep.read_text())["passed"] is True
    assert main(["verify", "--suite", "as1-violation-demo", "--max-objects", "2", "--max-morphisms", "3",
                 "--report", str(rep)]) == FALSE
    data = json.loads(rep.read_text())
    assert len(data["failures"]) == 1 and data["failures"][0]["witness"]
    assert main(["verify", "--suite", "kappa-pasting", "--max-objects", "2", "--max-morphisms", "3",
                 "--time-budget", "0.3", "--report", str(rep)]) == BUDGET
    assert json.loads(rep.read_text())["complete"] is False
    assert main(["verify", "--suite", "nope", "--report", str(rep)]) == INVALID
    assert json.loads(rep.read_text())["passed"] is False
