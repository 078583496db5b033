import json

import pytest

import esakiakit.cli as cli
from esakiakit import PropertyFalsified


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture()
def chain2(tmp_path):
    return write_json(tmp_path / "chain2.json",
                      {"n": 2, "covers": [[0, 1]]})


@pytest.fixture()
def pair(tmp_path):
    return write_json(tmp_path / "pair.json", {"n": 2, "covers": []})


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_usage_errors(capsys):
    assert cli.main([]) == 2
    assert cli.main(["bogus"]) == 2
    assert cli.main(["gen-ladder"]) == 2
    assert cli.main(["--help"]) == 0
    capsys.readouterr()


def test_domain_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "gen-ladder", "--n", "0", "--depth", "-1")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "convert", "--poset",
                       str(tmp_path / "missing.json"), "--format", "json")
    assert code == 2
    empty = write_json(tmp_path / "empty.json", {})
    code, _, _ = run(capsys, "convert", "--poset", empty, "--format", "json")
    assert code == 2
    bad = write_json(tmp_path / "bad.json", {"n": 1, "covers": 5})
    code, _, err = run(capsys, "convert", "--poset", bad, "--format", "json")
    assert code == 2 and err.startswith("error:")


def test_list_shaped_poset_and_coloring_files(capsys, tmp_path):
    poset = write_json(tmp_path / "p.json",
                       {"n": 2, "covers": [[0, 1]], "labels": ["lo", "hi"]})
    coloring = write_json(tmp_path / "c.json", {"n": 1, "colors": ["0", "1"]})
    code, out, _ = run(capsys, "check-coloring", "--poset", poset,
                       "--coloring", coloring)
    assert code == 0
    assert json.loads(out)["weak"] is True
    code, out, _ = run(capsys, "convert", "--poset", poset, "--format", "json")
    assert code == 0
    assert json.loads(out)["labels"] == {"0": "lo", "1": "hi"}


def test_gen_ladder_json(capsys):
    code, out, _ = run(capsys, "gen-ladder", "--n", "0", "--depth", "1")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 4
    assert data["covers"] == [[2, 1], [3, 0]]
    assert data["labels"]["2"] == "y1_0"


def test_gen_abomination_json(capsys):
    code, out, _ = run(capsys, "gen-abomination", "--n", "2", "--depth", "0")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 34
    assert data["labels"]["2"] == "c0_0"


def test_dot_output(capsys):
    code, out, _ = run(capsys, "gen-ladder", "--n", "0", "--depth", "1",
                       "--format", "dot")
    assert code == 0
    assert out.startswith("digraph poset {\n  rankdir=BT;")
    assert 'n0 [label="y0_0"];' in out
    assert "n2 -> n1;" in out


def test_csv_output(capsys):
    code, out, _ = run(capsys, "gen-ladder", "--n", "0", "--depth", "1",
                       "--format", "csv")
    assert code == 0
    assert out == "lower,upper\n2,1\n3,0\n"


def test_check_coloring_reports_monochrome_pair(capsys, tmp_path, pair):
    coloring = write_json(tmp_path / "f.json",
                          {"n": 1, "colors": {"0": "0", "1": "0"}})
    code, out, _ = run(capsys, "check-coloring", "--poset", pair,
                       "--coloring", coloring)
    assert code == 0
    assert out.strip() == ('{"monochrome_pair":["beta",0,1],'
                           '"order":1,"strict":false,"weak":true}')


def test_check_coloring_strict(capsys, tmp_path, pair):
    coloring = write_json(tmp_path / "f.json",
                          {"n": 1, "colors": {"0": "0", "1": "1"}})
    code, out, _ = run(capsys, "check-coloring", "--poset", pair,
                       "--coloring", coloring)
    assert code == 0
    assert json.loads(out) == {"monochrome_pair": None, "order": 1,
                               "strict": True, "weak": True}


def test_check_coloring_rejects_non_weak(capsys, tmp_path, chain2):
    coloring = write_json(tmp_path / "f.json",
                          {"n": 1, "colors": {"0": "1", "1": "0"}})
    code, _, err = run(capsys, "check-coloring", "--poset", chain2,
                       "--coloring", coloring)
    assert code == 2
    assert "order preserving" in err


def test_reduce(capsys, tmp_path):
    poset = write_json(tmp_path / "p.json",
                       {"n": 4, "covers": [[0, 1], [1, 2], [1, 3]]})
    coloring = write_json(tmp_path / "f.json",
                          {"n": 0, "colors": {str(i): "" for i in range(4)}})
    code, out, _ = run(capsys, "reduce", "--poset", poset,
                       "--coloring", coloring)
    assert code == 0
    assert json.loads(out) == {
        "partition": {"blocks": [[0, 1, 2, 3]]},
        "steps": [{"kind": "beta", "pair": [2, 3]},
                  {"kind": "alpha", "pair": [1, 2]},
                  {"kind": "alpha", "pair": [0, 2]}]}


def test_census_json_and_csv(capsys, chain2):
    code, out, _ = run(capsys, "census", "--poset", chain2, "--n", "1")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 1
    assert data["distinct_partitions"] == 2
    assert data["record"]["mode"] == "exhaustive"
    assert data["entries"] == [{"blocks": [[0, 1]], "size": 1},
                               {"blocks": [[0], [1]], "size": 2}]
    code, out, _ = run(capsys, "census", "--poset", chain2, "--n", "1",
                       "--format", "csv")
    assert code == 0
    assert out == "entry,quotient_size,block_count\n0,1,1\n1,2,2\n"


def test_census_budget_exhaustion_exits_3(capsys, chain2):
    code, _, err = run(capsys, "census", "--poset", chain2, "--n", "1",
                       "--budget", "0")
    assert code == 3
    assert "budget exhausted" in err


def test_kc_probe_outputs(capsys):
    code, out, _ = run(capsys, "kc-probe", "--max-size", "3")
    assert code == 0
    assert json.loads(out) == {"entries": [[1, 2], [2, 3]],
                               "max_size": 3, "maximum": 3}
    code, out, _ = run(capsys, "kc-probe", "--max-size", "3",
                       "--format", "csv")
    assert out == "poset_size,algebra_size\n1,2\n2,3\n"


def test_convert_is_byte_stable(capsys, tmp_path):
    first = write_json(tmp_path / "in.json",
                       {"covers": [[0, 1]], "n": 2})
    code, out1, _ = run(capsys, "convert", "--poset", first,
                        "--format", "json")
    assert code == 0
    second = (tmp_path / "again.json")
    second.write_text(out1, encoding="utf-8")
    code, out2, _ = run(capsys, "convert", "--poset", str(second),
                        "--format", "json")
    assert out1 == out2
    code, out, _ = run(capsys, "convert", "--poset", first, "--format", "csv")
    assert out == "lower,upper\n0,1\n"


def test_thread_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("ESAKIA_KIT_THREADS", "abc")
    code, _, err = run(capsys, "kc-probe", "--max-size", "1")
    assert code == 2 and "ESAKIA_KIT_THREADS" in err
    monkeypatch.setenv("ESAKIA_KIT_THREADS", "0")
    assert cli.main(["kc-probe", "--max-size", "1"]) == 2
    capsys.readouterr()
    monkeypatch.setenv("ESAKIA_KIT_THREADS", "3")
    code, out, _ = run(capsys, "kc-probe", "--max-size", "1")
    assert code == 0 and json.loads(out)["maximum"] == 2


def test_verify_passes_through_suite_report(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite",
                        lambda seed: {"suite": "paper", "seed": seed,
                                      "pass": True, "criteria": []})
    code, out, _ = run(capsys, "verify", "--suite", "paper", "--seed", "7")
    assert code == 0
    assert out.strip() == ('{"criteria":[],"pass":true,'
                           '"seed":7,"suite":"paper"}')


def test_verify_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite",
                        lambda seed: {"suite": "paper", "seed": seed,
                                      "pass": False,
                                      "criteria": [{"id": 5, "pass": False}]})
    code, _, err = run(capsys, "verify", "--suite", "paper")
    assert code == 1
    assert "FALSIFIED: criteria [5] failed" in err


def test_falsification_exits_1(capsys, monkeypatch, chain2):
    def boom(*args, **kwargs):
        raise PropertyFalsified("boom")
    monkeypatch.setattr(cli, "quotient_census", boom)
    code, _, err = run(capsys, "census", "--poset", chain2, "--n", "1")
    assert code == 1
    assert err.startswith("FALSIFIED: boom")
