import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ftwhittle.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, main, parse_range


def schema(name):
    return json.loads(resources.files("ftwhittle").joinpath(f"schemas/{name}.schema.json").read_text())


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1-4") == [1, 2, 3, 4]
    assert parse_range("2,4-5") == [2, 4, 5]


def test_verify_passes(capsys):
    assert main(["verify", "--n", "2", "--k", "3", "--checks", "acyclic,euler,bound,deflate"]) == EXIT_OK
    assert "ft_2^3: acyclic=pass deflate=pass euler=pass bound=pass" in capsys.readouterr().out
    assert main(["verify", "--n", "3", "--k", "3", "--checks", "acyclic"]) == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [["verify", "--n", "1", "--k", "2"], ["verify", "--n", "2", "--k", "0"], ["verify", "--n", "2", "--k", "x"],
     ["verify", "--n", "2", "--k", "2", "--checks", "nonsense"], ["whittle", "--n", "1", "--k", "2"],
     ["tl", "reduce", "1 5", "--n", "3"], ["count", "--n", "2", "--k", "1", "--h", "-1"], ["bogus"]],
)
def test_invalid_input_exit_code(argv):
    assert main(argv) == EXIT_INVALID


def test_failed_check_exit_code(tmp_path):
    # survivors of ft_4^3 that fall outside both forms make the jnf check fail
    assert main(["verify", "--n", "4", "--k", "3", "--checks", "jnf", "--out", str(tmp_path)]) == EXIT_FAILED
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["failed_checks"] == ["jnf"]


def test_report_is_deterministic_and_valid(tmp_path):
    argv = ["verify", "--n", "2-3", "--k", "2", "--checks", "acyclic,deflate,euler,bound,jnf,homology"]
    assert main(argv + ["--out", str(tmp_path / "a")]) == EXIT_OK
    assert main(argv + ["--out", str(tmp_path / "b")]) == EXIT_OK
    a = json.loads((tmp_path / "a" / "report.json").read_text())
    b = json.loads((tmp_path / "b" / "report.json").read_text())
    assert strip_timings(a) == strip_timings(b)
    jsonschema.validate(a, schema("report"))


def test_whittle_exports_and_classify(tmp_path, capsys):
    assert main(["whittle", "--n", "3", "--k", "3", "--out", str(tmp_path)]) == EXIT_OK
    for name, sch in [("isomorphisms", "isomorphism"), ("edges", "edge"), ("survivors", "state_record")]:
        lines = (tmp_path / f"{name}.jsonl").read_text().splitlines()
        assert lines
        for line in lines:
            jsonschema.validate(json.loads(line), schema(sch))
    capsys.readouterr()
    assert main(["classify", "--in", str(tmp_path / "survivors.jsonl"), "--n", "3"]) == EXIT_OK
    records = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert len(records) == 15 and all(r["form"] for r in records)
    for r in records:
        jsonschema.validate(r, schema("state_record"))


def test_count_output(capsys):
    assert main(["count", "--n", "3", "--k", "2", "--h", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "total             = 25" in out
    assert "(JNF words of length h: 2)" in out


def test_homology_tsv_and_json(capsys):
    assert main(["homology", "--n", "2", "--k", "3"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "h\tq\trank\ttorsion"
    assert "3\t7\t0\tZ/2" in out
    assert main(["homology", "--n", "2", "--k", "3", "--format", "json", "--open-euler"]) == EXIT_OK
    text = capsys.readouterr().out
    data = json.loads(text[: text.index("\n# pairing")])
    assert data["free_ranks"] == {"0": 2, "1": 0, "2": 1, "3": 1}


def test_tl_commands(capsys):
    assert main(["tl", "reduce", "3 1 3", "--n", "4"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1].startswith("1 3")
    assert main(["tl", "reduce", "1 1", "--n", "3", "--d-moves"]) == EXIT_FAILED
    capsys.readouterr()
    assert main(["tl", "enumerate", "--n", "3", "--h", "2"]) == EXIT_OK
    assert capsys.readouterr().out.split("\n")[:2] == ["1 2", "2 1"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ftwhittle", "count", "--n", "2", "--k", "1", "--h", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "total             = 8" in proc.stdout
