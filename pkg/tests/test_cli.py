import json
import threading

import pytest

from docalearn import cli, protocol, serialization
from docalearn.automata import Dfa
from docalearn.oracle import Teacher
from docalearn.testkit import load_fixture


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("anbn", "primematch", "allaccept"):
        path = tmp_path / f"{name}.json"
        serialization.save(load_fixture(name).target, path)
        out[name] = str(path)
    empty = Dfa(("a", "b"), ["e"], "e", [], {("e", "a"): "e", ("e", "b"): "e"})
    out["empty"] = str(tmp_path / "empty.json")
    serialization.save(empty, out["empty"])
    return out


def test_equiv_same(files, capsys):
    assert cli.main(["equiv", files["anbn"], files["anbn"], "--bound", "10"]) == 0
    assert capsys.readouterr().out == "OK\n"


def test_equiv_counterexample(files, capsys):
    assert cli.main(["equiv", files["empty"], files["anbn"], "--bound", "10"]) == 1
    assert capsys.readouterr().out == "CE ab\n"


def test_run(files, capsys):
    assert cli.main(["run", files["anbn"], "aabb"]) == 0
    assert capsys.readouterr().out.startswith("accept ")
    assert cli.main(["run", files["anbn"], "aab"]) == 1
    assert cli.main(["run", files["primematch"], "a,a,𝔭₂,b,a"]) == 0


def test_usage_errors(files, capsys):
    assert cli.main(["run", files["anbn"], "abx"]) == 2
    assert cli.main(["equiv", "missing.json", files["anbn"], "--bound", "3"]) == 2
    assert cli.main(["gen-random", "--states", "0"]) == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli.main(["run", str(bad), "a"]) == 2


def test_gen_random_round_trips(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert cli.main(["gen-random", "--states", "3", "--seed", "4", "--reset-prob", "0.2",
                     "--out", str(path)]) == 0
    m = serialization.load(path)
    assert m.size == 3 and not m.validate()


def test_lexmin_table(files, capsys):
    assert cli.main(["lexmin", files["empty"]]) == 0
    assert capsys.readouterr().out == "e\t0\tε\n"
    assert cli.main(["lexmin", files["anbn"], "--depth", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "(s0,0)\t0\tε"
    assert lines[1] == "(s1,0)\t1\ta"


def test_export_dot(files, tmp_path, capsys):
    assert cli.main(["export-dot", files["anbn"]]) == 0
    assert capsys.readouterr().out.startswith('digraph "anbn"')
    assert cli.main(["export-dot", files["empty"], "--regions", "desk-small,1"]) == 0
    assert "fillcolor=gray" in capsys.readouterr().out
    assert cli.main(["export-dot", files["anbn"], "--regions", "desk-small,1"]) == 2


def test_minimize_writes_outputs(files, tmp_path):
    out, stats, dot = (tmp_path / n for n in ("m.json", "s.json", "b.dot"))
    assert cli.main(["minimize", files["primematch"], "--out", str(out), "--stats", str(stats),
                     "--dot", str(dot)]) == 0
    assert cli.main(["equiv", str(out), files["primematch"], "--bound", "14"]) == 0
    st = json.loads(stats.read_text())
    assert st["n_final"] == 2 and st["mq"] > 0
    assert "fillcolor=black" in dot.read_text()


def test_learn_fails_cleanly_at_n_max(files, capsys):
    assert cli.main(["learn", "--teacher", files["anbn"], "--n-max", "1"]) == 1
    assert "no equivalent machine" in capsys.readouterr().err


def test_learn_over_tcp_matches_in_process(files, tmp_path):
    target = load_fixture("anbn").target
    server = protocol.make_server(Teacher(target, 96))
    th = threading.Thread(target=server.serve_forever, daemon=True)
    th.start()
    host, port = server.server_address[:2]
    remote, local = tmp_path / "remote.json", tmp_path / "local.json"
    try:
        assert cli.main(["learn", "--teacher", f"tcp:{host}:{port}", "--out", str(remote)]) == 0
    finally:
        server.shutdown()
        server.server_close()
    assert cli.main(["learn", "--teacher", files["anbn"], "--out", str(local)]) == 0
    assert cli.main(["equiv", str(remote), str(local), "--bound", "40"]) == 0
