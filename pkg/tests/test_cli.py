import json

import pytest

from twthick.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ktree(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert call(capsys, "--seed", "3", "gen", "ktree", "--k", "2", "--n", "12", "-o", str(path))[0] == 0
    return path


def test_gen_is_seeded(tmp_path, capsys):
    a = call(capsys, "gen", "ktree", "--k", "3", "--n", "20", "--seed", "5")[1]
    b = call(capsys, "gen", "ktree", "--k", "3", "--n", "20", "--seed", "5")[1]
    c = call(capsys, "gen", "ktree", "--k", "3", "--n", "20", "--seed", "6")[1]
    assert a == b and a != c


def test_oracle_prints_value(tmp_path, capsys):
    path = tmp_path / "k6.json"
    path.write_text(json.dumps({"n": 6, "edges": [[a, b] for a in range(6) for b in range(a + 1, 6)]}))
    code, out, _ = call(capsys, "oracle", "bt", "-i", str(path))
    assert code == 0 and out.strip() == "3"
    code, out, _ = call(capsys, "oracle", "arb", "-i", str(path), "--json")
    assert code == 0 and json.loads(out)["value"] == 3


def test_embed_and_verify(tmp_path, capsys, ktree):
    emb = tmp_path / "e.json"
    assert call(capsys, "embed", "stars", "-i", str(ktree), "-o", str(emb))[0] == 0
    code, out, _ = call(capsys, "verify", "book", "-i", str(emb), "-g", str(ktree), "--mode", "star_forest")
    assert code == 0 and json.loads(out)["passed"]


def test_draw_and_verify(tmp_path, capsys, ktree):
    d = tmp_path / "d.json"
    assert call(capsys, "draw", "thickness", "-i", str(ktree), "-o", str(d))[0] == 0
    assert call(capsys, "verify", "drawing", "-i", str(d))[0] == 0
    assert call(capsys, "verify", "good", "-i", str(d), "-g", str(ktree))[0] == 0
    svg = tmp_path / "d.svg"
    assert call(capsys, "export-svg", "-i", str(d), "-o", str(svg))[0] == 0
    assert svg.read_text().startswith("<?xml")


def test_failed_verification_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": [0, 1, 2, 3], "pages": {"0-2": 1, "1-3": 1}, "page_count": 1}))
    code, out, _ = call(capsys, "verify", "book", "-i", str(bad))
    assert code == 1 and not json.loads(out)["passed"]


def test_usage_errors_exit_2(tmp_path, capsys):
    assert call(capsys, "gen", "ktree", "--k", "2")[0] == 2
    assert call(capsys, "oracle", "bt", "-i", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    code, _, err = call(capsys, "refute", "tt", "--k", "5", "--s", "64", "--ell", "2")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_refute_commands(capsys):
    code, out, _ = call(capsys, "--seed", "9", "refute", "tt", "--k", "5", "--s", "65", "--ell", "2")
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = call(capsys, "refute", "sa", "--k", "2")
    assert code == 0 and json.loads(out)["witness"]["kind"] in ("P4", "C4")
