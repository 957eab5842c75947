import json

import pytest

from unipotent import cli
from unipotent.homotopy.complexes import ChainMap, IntChainComplex
from unipotent.homotopy.vanishing import bockstein_witness, generate_cohomologically_zero_instance, TWindow
from unipotent.suites import ANCHORS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poset_command(capsys):
    code, out, _ = run(capsys, "poset", "--p-size", "2")
    report = json.loads(out)
    assert code == 0
    assert len(report["results"]["poset"]["hasse"]["nodes"]) == 4
    assert report["summary"]["fail"] == 0


def test_witness_command(capsys):
    code, out, _ = run(capsys, "jordan", "--witness", "3", "--a-max", "3")
    report = json.loads(out)
    assert code == 0
    wit = report["results"]["jordan"]["witness"]
    assert wit["matrix"] == [[f"{x} mod 2" for x in row] for row in ([1, 0, 0], [0, 1, 1], [0, 0, 1])]
    assert wit["field"] == "F2"


@pytest.mark.parametrize(
    "argv",
    [
        ["rescale", "--l", "4"],
        ["jordan", "--witness", "5"],
        ["jordan", "--witness", "15"],
        ["poset", "--p-size", "6"],
        ["mult", "--a-max", "0"],
        ["compose", "--n-range", "3:1"],
        ["rescale", "--t-set", "0"],
        ["vancrit", "--instance", "/nonexistent.json"],
    ],
)
def test_config_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and "error" in err


def test_unknown_command_is_rejected():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_reports_are_deterministic(capsys, tmp_path):
    argv = ["verify-all", "--l", "3", "--a-max", "3", "--r-max", "6", "--instances", "10", "--p-size", "2", "--seed", "4"]
    texts = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert cli.main(argv + ["-o", str(path)]) == 0
        texts.append(cli.dumps(cli.strip_timing(json.loads(path.read_text(encoding="utf-8")))))
    assert texts[0] == texts[1]
    report = json.loads(texts[0])
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    assert all(c["anchor"] in ANCHORS for c in report["checks"])
    assert report["command"]["seed"] == 4


def test_instance_file_passes(capsys, tmp_path):
    inst = generate_cohomologically_zero_instance(TWindow(0, 1), 2)
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst.to_obj()))
    code, out, _ = run(capsys, "vancrit", "--instance", str(path))
    assert code == 0
    assert json.loads(out)["results"]["vancrit"]["verdict"]["status"] == "vanishes"


def test_instance_file_with_short_composite_fails(capsys, tmp_path):
    path = tmp_path / "bock.json"
    path.write_text(json.dumps({"window": [0, 1], "maps": [bockstein_witness().to_obj()]}))
    code, out, _ = run(capsys, "vancrit", "--instance", str(path))
    report = json.loads(out)
    assert code == 1
    (chk,) = report["checks"]
    assert chk["status"] == "fail"
    assert chk["witness"]["status"] == "refused"


def test_instance_file_reports_violations(capsys, tmp_path):
    c = IntChainComplex.two_term(0, 2)
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"window": [1, 1], "maps": [ChainMap.identity(c).to_obj()]}))
    code, out, _ = run(capsys, "vancrit", "--instance", str(path))
    assert code == 1
    assert json.loads(out)["checks"][0]["witness"]["violations"][0]["kind"] == "nonzero"


def test_table_format(capsys):
    code, out, _ = run(capsys, "rescale", "--r-max", "5", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("rescale:")
    assert all(line.startswith("PASS") for line in lines[1:])


def test_failing_check_exits_1(monkeypatch, capsys):
    def broken(cfg, rec):
        rec.sweep("rescale.broken", "rescale-c21", [1], lambda x: False)
        return {}

    monkeypatch.setattr(cli, "rescale_suite", broken)
    code, out, _ = run(capsys, "rescale")
    report = json.loads(out)
    assert code == 1
    assert report["checks"][0]["witness"] == {"case": [1]}


def test_report_layout(capsys):
    code, out, _ = run(capsys, "mult", "--a-max", "3", "--l", "2")
    report = json.loads(out)
    assert set(report) == {"command", "checks", "summary", "results", "timing", "versions"}
    assert set(report["versions"]) == {"artifact", "python", "numpy"}
    assert all(c["status"] in ("pass", "fail", "skip") for c in report["checks"])


def test_output_is_utf8_with_exact_strings(tmp_path):
    path = tmp_path / "r.json"
    assert cli.main(["rescale", "--r-max", "4", "-o", str(path)]) == 0
    text = path.read_bytes().decode("utf-8")
    assert text.endswith("\n")
    assert json.loads(text)["command"]["t_set"] == ["2", "1/3", "3"]
