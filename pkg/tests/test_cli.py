import json

import pytest

from hopforest.cli import main
from hopforest.families import figure_lattice, partition_lattice
from hopforest.jsonio import dumps


@pytest.fixture
def write(tmp_path):
    def _write(P, name="in.json"):
        path = tmp_path / name
        path.write_text(dumps(P))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_antipode_text(capsys, write):
    code, out, _ = run(capsys, "antipode", "--input", write(figure_lattice(1)), "--engine", "both", "--text")
    assert code == 0
    assert out.strip() == "-X3 + 2*X1*X2 - X1^3"


def test_antipode_json_report(capsys, write):
    path = write(figure_lattice(1))
    code, out, _ = run(capsys, "antipode", "--input", path, "--engine", "both", "--trace")
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"command", "input_sha256", "registry", "result"}
    res = report["result"]
    assert res["comparison"]["equal"] is True
    assert len(res["trace"]) == 4
    assert report["registry"]["X1"]["size"] == 2


def test_output_is_deterministic(capsys, write):
    path = write(partition_lattice(4))
    _, first, _ = run(capsys, "antipode", "--input", path, "--engine", "forests")
    _, second, _ = run(capsys, "antipode", "--input", path, "--engine", "forests")
    assert first == second


def test_timing_is_opt_in(capsys, write):
    _, out, _ = run(capsys, "mobius", "--input", write(partition_lattice(3)), "--timing")
    report = json.loads(out)
    assert report["result"]["mobius"] == 2
    assert report["timing_seconds"] >= 0


def test_mobius_text(capsys, write):
    assert run(capsys, "mobius", "--input", write(partition_lattice(4)), "--text")[1].strip() == "-6"


def test_forests_text(capsys, write):
    _, out, _ = run(capsys, "forests", "--input", write(figure_lattice(1)), "--text")
    assert sorted(out.split()) == sorted(["{}", "{a}", "{b}", "{a,", "b}"])


def test_center_and_factor(capsys, write):
    from hopforest.families import boolean_lattice

    path = write(boolean_lattice(2))
    res = json.loads(run(capsys, "center", "--input", path)[1])["result"]
    assert len(res["center"]) == 4 and len(res["prime_center"]) == 2
    res = json.loads(run(capsys, "factor", "--input", path)[1])["result"]
    assert res["factors"] == ["X1", "X1"] and res["complete"]


def test_check_commands(capsys, write):
    fig3 = write(figure_lattice(3), "f3.json")
    pi4 = write(partition_lattice(4), "p4.json")
    assert run(capsys, "check", "sui", "--input", pi4, "--text")[1].strip() == "true"
    res = json.loads(run(capsys, "check", "sui", "--input", fig3)[1])["result"]
    assert res["sui"] is False and "witness" in res
    _, out, _ = run(capsys, "check", "cancellation", "--input", fig3, "--text")
    assert "{a} ~ {a, b}" in out
    res = json.loads(run(capsys, "check", "family", "--inputs", pi4, fig3)[1])["result"]
    assert res["upper_indecomposable"] is False and res["witness"]["input"] == fig3


def test_family_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "family", "colored", "--counts", "2,1", "--top-color", "2")
    assert code == 0
    path = tmp_path / "c.json"
    path.write_text(out)
    _, out, _ = run(capsys, "antipode", "--input", str(path), "--engine", "both", "--poset")
    assert json.loads(out)["result"]["comparison"]["equal"]


def test_family_ideals(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"elements": ["x", "y"], "covers": []}))
    _, out, _ = run(capsys, "family", "ideals", "--input", str(path))
    assert len(json.loads(out)["elements"]) == 4


def test_family_random_shapes(capsys):
    _, out, _ = run(capsys, "family", "random", "--seed", "5", "--shape", "nonlattice", "--max-size", "8")
    assert len(json.loads(out)["elements"]) <= 8


def test_registry_file(capsys, write, tmp_path):
    reg = tmp_path / "reg.json"
    run(capsys, "antipode", "--input", write(figure_lattice(1)), "--registry", str(reg))
    data = json.loads(reg.read_text())
    assert set(data) == {"X1", "X2", "X3"}


def test_invalid_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]}')
    code, out, err = run(capsys, "mobius", "--input", str(bad))
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "NoUniqueTop"
    assert run(capsys, "mobius", "--input", str(tmp_path / "nope.json"))[0] == 3


def test_max_size(capsys, write):
    code, _, err = run(capsys, "mobius", "--input", write(partition_lattice(4)), "--max-size", "10")
    assert code == 3


def test_decomposable_check_exit_code(capsys, write):
    from hopforest.families import boolean_lattice

    code, _, err = run(capsys, "check", "sui", "--input", write(boolean_lattice(2)))
    assert code == 3 and json.loads(err)["error"] == "InputDecomposable"


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_bad_threads(capsys, write, monkeypatch):
    monkeypatch.setenv("HOPF_THREADS", "zero")
    assert run(capsys, "mobius", "--input", write(figure_lattice(1)))[0] == 3
    monkeypatch.setenv("HOPF_THREADS", "2")
    assert run(capsys, "mobius", "--input", write(figure_lattice(1)))[0] == 0
