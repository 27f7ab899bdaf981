import json
import subprocess
import sys

import pytest

from latticevoa.cli import LatticeFileError, main, parse_lattice_file


@pytest.fixture()
def files(tmp_path):
    out = {}
    for name, gram in (("a1", [[2]]), ("hyp", [[0, 1], [1, 0]]), ("d4", [[4]]), ("odd", [[1]])):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps({"gram": gram}))
        out[name] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text('{"gram": [[2],\n [1 2]]}')
    out["bad"] = str(bad)
    return out


def test_parse_lattice_file(files):
    assert parse_lattice_file(files["a1"]).rank == 1
    assert parse_lattice_file(files["hyp"]).det == -1
    with pytest.raises(LatticeFileError, match="NotEven"):
        parse_lattice_file(files["odd"])
    with pytest.raises(LatticeFileError, match=r":2:"):
        parse_lattice_file(files["bad"])


def test_check_axioms_exit_zero(files, capsys):
    assert main(["check-axioms", "--lattice", files["a1"], "--triples", "3"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["central_charge"] == "1" and body["passed"]


def test_classify_lists_four_classes(files, capsys):
    assert main(["classify", "--lattice", files["a1"], "--lattice", files["a1"], "--max-weight", "3"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["classes"]) == 4 and body["bijection"]


def test_decompose_two_summands(files, capsys):
    assert main(["decompose", "--lattice", files["a1"]]) == 0
    body = json.loads(capsys.readouterr().out)
    assert [s["coset_rep"] for s in body["summands"]] == [["0"], ["1/2"]]


def test_characters_csv(files, tmp_path):
    out = tmp_path / "chars.csv"
    assert main(["characters", "--lattice", files["a1"], "--coset", "1/2", "--max-weight", "2",
                 "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "sector,weight,dimension" and "1/2,1/4,1" in lines
    assert not list(tmp_path.glob(".tmp-*"))


@pytest.mark.parametrize("argv", [
    ["characters"],
    ["classify", "--lattice", "{a1}"],
    ["characters", "--lattice", "{odd}"],
    ["characters", "--lattice", "{a1}", "--max-weight", "-1"],
    ["characters", "--lattice", "{a1}", "--max-weight", "x"],
    ["characters", "--lattice", "{a1}", "--coset", "1/3"],
    ["decompose", "--lattice", "{a1}", "--format", "csv"],
    ["characters", "--lattice", "{a1}", "--sectors", "box:2"],
    ["frobnicate"],
    ["characters", "--lattice", "/nonexistent/file.json"],
])
def test_usage_errors_exit_two(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    assert main(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert set(err) == {"error", "message"}


def test_explicit_sector_list(files, capsys):
    assert main(["characters", "--lattice", files["hyp"], "--sectors", "list:1,-1;0,0", "--max-weight", "1"]) == 0
    body = json.loads(capsys.readouterr().out)
    cells = {(c["sector"], c["weight"]) for c in body["character"]["cells"]}
    assert ("1 -1", "-1") in cells and ("0 0", "0") in cells


def test_text_format(files, capsys):
    assert main(["tensor-check", "--lattice", files["a1"], "--lattice", files["a1"],
                 "--format", "text", "--instances", "10", "--max-weight", "3"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("tensor-check: PASS") and "central charge: 2" in text


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "latticevoa", "decompose", "--lattice", files["d4"],
                           "--format", "text"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.count("summand") == 4


def test_same_seed_same_bytes(files, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        assert main(["check-axioms", "--lattice", files["hyp"], "--seed", "7", "--triples", "3",
                     "--max-weight", "3", "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
