import json

import pytest

from helpers import S012_EDGES, S012_MAX, decode_edges
from streelat.cli import main
from streelat.core import MultiInversionSet, WeakComposition


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,flavor,count", [
    ("0,0,2", "sweak", 9), ("1,1,1", "sweak", 6), ("1,1,1", "stamari", 5), ("0,1,2", "sweak", 12),
])
def test_enumerate_counts(capsys, text, flavor, count):
    code, out, _ = run(capsys, "--s", text, "--flavor", flavor, "enumerate")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == str(count) and len(lines) == count + 1


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "--s", "0,2", "--format", "json", "enumerate")
    data = json.loads(out)
    assert code == 0 and data["count"] == 3
    assert data["elements"][0] == {"s": [0, 2], "inv": []}


def test_hasse_dot(capsys):
    code, out, _ = run(capsys, "--s", "0,1,2", "hasse", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    assert out.count("->") == 15
    assert out.count("[label=") == 15


def test_hasse_edges_match_drawing(capsys):
    _, out, _ = run(capsys, "--s", "0,1,2", "hasse")
    data = json.loads(out)
    s = WeakComposition((0, 1, 2))
    nodes = [MultiInversionSet.from_triples(s, n["inv"]) for n in data["nodes"]]
    assert {(nodes[a], nodes[b], lab) for a, b, lab in data["edges"]} == decode_edges(s, S012_EDGES, S012_MAX)


def test_hasse_json(capsys):
    code, out, _ = run(capsys, "--s", "0,2,2", "hasse")
    data = json.loads(out)
    assert len(data["nodes"]) == 15 and len(data["edges"]) == 20


def test_hasse_single_vertex(capsys):
    code, out, _ = run(capsys, "--s", "3", "hasse")
    data = json.loads(out)
    assert code == 0 and len(data["nodes"]) == 1 and data["edges"] == []


def test_hasse_csv_header(capsys):
    _, out, _ = run(capsys, "--s", "0,0,2", "--format", "csv", "hasse")
    rows = out.splitlines()
    assert rows[0] == "lower,upper,label" and len(rows) == 13


@pytest.mark.parametrize("text,flavor", [("0,1,2", "sweak"), ("1,1,1,1", "stamari"), ("0,2,2", "stamari")])
def test_verify_passes(capsys, text, flavor):
    code, out, _ = run(capsys, "--s", text, "--flavor", flavor, "verify")
    r = json.loads(out)
    assert code == 0 and r["sb_pass"] and r["violations"] == []


def test_verify_text(capsys):
    code, out, _ = run(capsys, "--s", "1,1,1", "verify", "--format", "text")
    assert code == 0
    assert "elements=6" in out and "hexagon=1" in out and out.rstrip().endswith("PASS")


def test_classify_cover(capsys):
    code, out, _ = run(capsys, "--s", "0,0,2", "classify", "--bottom", "[]", "--top", "[[3,2,1]]")
    r = json.loads(out)
    assert code == 0
    assert r["homotopy"] == {"type": "sphere", "dim": -1} and r["mobius"] == -1


def test_classify_diamond(capsys):
    top = json.dumps({"s": [0, 0, 2], "inv": [[3, 1, 1], [3, 2, 1]]})
    code, out, _ = run(capsys, "--s", "0,0,2", "classify", "--bottom", "[]", "--top", top)
    r = json.loads(out)
    assert r["homotopy"] == {"type": "sphere", "dim": 0} and r["mobius"] == 1
    assert r["shape"] == "diamond"


def test_classify_ball(capsys):
    code, out, _ = run(capsys, "--s", "0,0,2", "classify", "--bottom", "[]", "--top", "[[3,1,1],[3,2,2]]")
    r = json.loads(out)
    assert r["homotopy"] == {"type": "ball"} and r["mobius"] == r["euler"] == 0


@pytest.mark.parametrize("argv", [
    ["--s=-1,2", "enumerate"],
    ["--s", "a,b", "enumerate"],
    ["enumerate"],
    ["--s", "0,0,2", "classify", "--bottom", "[[3,1,1]]", "--top", "[[3,2,1]]"],  # incomparable
    ["--s", "0,0,2", "classify", "--bottom", "[]", "--top", "[[2,1,1]]"],  # over the cap
    ["--s", "0,0,2", "classify", "--bottom", "[]", "--top", "[[1]]"],
    ["--s", "0,0,2", "classify", "--bottom", "[]", "--top", "{"],
    ["--s", "0,0,2", "--flavor", "stamari", "classify", "--bottom", "[]", "--top", "[[3,1,1]]"],
    ["--s", "0,0,2", "--format", "dot", "enumerate"],
])
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("streelat: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--s", "0,1", "--flavor", "tamari", "enumerate"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys):
    argv = ["--s", "0,2,2", "--flavor", "stamari", "stats"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_output_file(capsys, tmp_path):
    path = tmp_path / "h.dot"
    code, out, _ = run(capsys, "--s", "0,1,2", "hasse", "--format", "dot", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text().count("->") == 15


def test_output_file_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "--s", "0,1", "hasse", "-o", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "error" in err


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify-all", "--max-n", "3", "--max-entry", "1")
    assert code == 0
    assert out.splitlines()[-1] == "28 lattices, 0 with violations"


def test_verify_all_one_flavor_json(capsys):
    code, out, _ = run(capsys, "--flavor", "stamari", "--format", "json", "verify-all", "--max-n", "2")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0
    assert data["lattices"] == 4 + 16
    assert {r["lattice"]["flavor"] for r in data["reports"]} == {"stamari"}


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "--s", "0,1,2", "oracle-check", "--max-n", "4")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") == 7


def test_stats(capsys):
    code, out, _ = run(capsys, "--s", "0,0,2", "stats")
    r = json.loads(out)
    assert r["elements"] == 9 and r["tree_count_formula"] == 9 and r["max_antichain"] == 3


def test_global_options_before_or_after_subcommand(capsys):
    a = run(capsys, "--flavor", "stamari", "--s", "1,1,1", "enumerate")
    b = run(capsys, "enumerate", "--flavor", "stamari", "--s", "1,1,1")
    assert a == b and a[1].splitlines()[0] == "5"
