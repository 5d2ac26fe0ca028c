import io
import json
import subprocess
import sys

import pytest

from torsionlink.cli import main
from torsionlink.exactalg import IntMatrix, matrix_to_json
from torsionlink.heegaard import lens_gluing, swap_gluing
from torsionlink.isometry import lens_form
from torsionlink.linking import form_to_json


def run(argv, monkeypatch=None, stdin=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def write_json(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return _write


def test_lens_form():
    code, out = run(["lens", "7", "1", "--emit", "form"])
    assert code == 0
    assert out == '{"invariant_factors":["7"],"gram":[["6/7"]]}\n'


def test_lens_homology_trivial():
    code, out = run(["lens", "1", "1", "--emit", "homology"])
    assert code == 0
    assert json.loads(out) == {"invariant_factors": [], "free_rank": 0}


def test_lens_matrix_and_table():
    code, out = run(["lens", "7", "3", "--emit", "matrix"])
    assert json.loads(out) == {"rows": 2, "cols": 2, "entries": [["3", "7"], ["1", "2"]]}
    code, out = run(["lens", "7", "3", "--format", "table"])
    assert code == 0 and "Z/7" in out and "4/7" in out


def test_lens_not_coprime(capsys):
    code, _ = run(["lens", "4", "2", "--emit", "form"])
    assert code == 2
    assert "p and q must be coprime" in capsys.readouterr().err


def test_linking_files(write_json):
    code, out = run(["linking", "--matrix", write_json("s.json", matrix_to_json(swap_gluing().matrix))])
    assert code == 0 and json.loads(out) == {"invariant_factors": [], "gram": []}
    code, out = run(["linking", "--matrix", write_json("l.json", matrix_to_json(lens_gluing(5, 2).matrix))])
    assert json.loads(out)["gram"] == [["3/5"]]


def test_linking_exit_codes(write_json):
    assert run(["linking", "--matrix", write_json("i.json", matrix_to_json(IntMatrix.identity(2)))])[0] == 3
    assert run(["linking", "--matrix", write_json("o.json", matrix_to_json(IntMatrix.identity(3)))])[0] == 3
    s1s2 = matrix_to_json(IntMatrix([[1, 0], [1, -1]]))
    assert run(["linking", "--matrix", write_json("n.json", s1s2)])[0] == 4
    assert run(["linking", "--matrix", write_json("b.json", {"rows": 1})])[0] == 1
    assert run(["linking", "--matrix", "/nonexistent.json"])[0] == 1


def test_linking_from_stdin(monkeypatch):
    code, out = run(["linking", "--matrix", "-"], monkeypatch, json.dumps(matrix_to_json(lens_gluing(7, 1).matrix)))
    assert code == 0 and json.loads(out)["gram"] == [["6/7"]]


def test_bad_json_is_parse_error(monkeypatch):
    assert run(["linking", "--matrix", "-"], monkeypatch, "{not json")[0] == 1


def test_usage_error_is_parse_error():
    with pytest.raises(SystemExit) as exc:
        main(["lens", "seven", "1"])
    assert exc.value.code == 1


def test_isometric(write_json):
    f71 = write_json("a.json", form_to_json(lens_form(7, 1)))
    f72 = write_json("b.json", form_to_json(lens_form(7, 2)))
    code, out = run(["isometric", f71, f72])
    assert code == 0 and out == '{"isometric":true,"witness":[["3"]]}\n'
    f51 = write_json("c.json", form_to_json(lens_form(5, 1)))
    f52 = write_json("d.json", form_to_json(lens_form(5, 2)))
    assert json.loads(run(["isometric", f51, f52])[1]) == {"isometric": False, "witness": None}
    assert json.loads(run(["isometric", f71, f71])[1]) == {"isometric": True, "witness": [["1"]]}


def test_isometric_cap(write_json, monkeypatch):
    big = {"invariant_factors": ["8", "8"], "gram": [["1/8", "0/1"], ["0/1", "3/8"]]}
    p = write_json("big.json", big)
    assert run(["isometric", p, p, "--cap", "10"])[0] == 5
    monkeypatch.setenv("TORSIONLINK_CAP", "10")
    assert run(["isometric", p, p])[0] == 5
    monkeypatch.setenv("TORSIONLINK_CAP", "100")
    assert run(["isometric", p, p])[0] == 0
    bad = write_json("bad.json", {"invariant_factors": ["3"], "gram": [["1/2"]]})
    assert run(["isometric", bad, bad])[0] == 1


def test_corpus_swap():
    code, out = run(["corpus", "--genus", "1", "--twists", "0", "--count", "1", "--seed", "0"])
    rec = json.loads(out)
    assert code == 0
    assert list(rec) == ["index", "genus", "twists", "seed", "matrix", "qhs", "homology", "form"]
    assert rec["matrix"]["entries"] == [["0", "1"], ["1", "0"]]
    assert rec["form"] == {"invariant_factors": [], "gram": []}


def test_corpus_is_deterministic_and_checked():
    argv = ["corpus", "--genus", "2", "--twists", "8", "--count", "5", "--seed", "7", "--check"]
    code1, out1 = run(argv)
    code2, out2 = run(argv)
    assert code1 == code2 == 0
    assert out1 == out2
    recs = [json.loads(line) for line in out1.splitlines()]
    assert len(recs) == 5
    for rec in recs:
        assert set(rec["check"].values()) <= {"pass", "skipped"}


def test_module_entry_point_byte_identical():
    argv = [sys.executable, "-m", "torsionlink", "corpus", "--genus", "3", "--twists", "12", "--count", "4", "--seed", "1"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.count(b"\n") == 4
