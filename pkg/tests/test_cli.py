import json
import shutil
import subprocess
import sys

import pytest

from irrlabel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


class TestPartition:
    def test_ok(self, capsys, schema_validator):
        code, doc, _ = run(capsys, "partition", "-g", "Z2xZ9", "-r", "4,4,4,4")
        assert code == 0
        schema_validator("partition", doc)
        assert doc["path"] == "zeng" and doc["certificate"]["ok"]

    def test_padded(self, capsys, schema_validator):
        code, doc, _ = run(capsys, "partition", "-g", "Z2xZ9", "-r", "4,4,4")
        assert code == 0 and doc["pad_index"] == 3
        schema_validator("partition", doc)

    def test_infeasible(self, capsys, schema_validator):
        code, doc, err = run(capsys, "partition", "-g", "Z2xZ2xZ2", "-r", "6")
        assert code == 3 and "infeasible" in err
        schema_validator("oracle", doc)
        assert doc["verdict"] == "infeasible"

    def test_unsupported_without_oracle(self, capsys):
        code, doc, err = run(capsys, "partition", "-g", "Z2xZ2xZ3", "-r", "4,4", "--no-oracle")
        assert code == 2 and doc is None and "oracle is disabled" in err

    @pytest.mark.parametrize("group,sizes", [("Z4x", "4"), ("Z10", "4,a"), ("Z10", "6,6")])
    def test_bad_input(self, capsys, group, sizes):
        code, _, err = run(capsys, "partition", "-g", group, "-r", sizes)
        assert code == 2 and err.startswith("error:")

    def test_budget(self, capsys):
        code, _, err = run(capsys, "partition", "-g", "Z2xZ2xZ2xZ2", "-r", "6,4,4", "--node-limit", "20")
        assert code == 4 and "budget" in err

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "p.json"
        assert main(["partition", "-g", "Z10", "-r", "4,4", "-o", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["path"] == "zeng"


class TestBlocks:
    def test_skolem(self, capsys, schema_validator):
        code, doc, _ = run(capsys, "skolem", "-g", "Z9")
        assert code == 0
        schema_validator("blocks", doc)
        assert doc["parts"][0] == {"kind": "good6", "elements": ["1", "2", "6", "8", "7", "3"], "witnesses": ["1", "2"]}
        assert doc["excluded"] == ["0"]

    def test_skolem_even(self, capsys):
        assert run(capsys, "skolem", "-g", "Z10")[0] == 2

    def test_zeng(self, capsys, schema_validator):
        code, doc, _ = run(capsys, "zeng", "-n", "10", "-m", "2", "-l", "1")
        assert code == 0
        schema_validator("blocks", doc)
        assert [p["elements"] for p in doc["parts"]] == [["1", "2", "7"], ["3", "8", "9"], ["4", "6"]]
        assert doc["certificate"]["ok"] and doc["certificate"]["checks"]["coverage"]

    def test_zeng_bad_counts(self, capsys):
        assert run(capsys, "zeng", "-n", "10", "-m", "1", "-l", "1")[0] == 2


class TestLabelVerify:
    def test_roundtrip(self, capsys, tmp_path, data_dir, schema_validator):
        out = tmp_path / "lab.json"
        assert main(["label", "-g", "Z2xZ9", "-i", str(data_dir / "two_c4.txt"), "-o", str(out)]) == 0
        doc = json.loads(out.read_text())
        schema_validator("labeling", doc)
        code, ver, _ = run(capsys, "verify", "-i", str(out))
        assert code == 0 and ver["kind"] == "labeling" and ver["certificate"]["ok"]
        schema_validator("verify", ver)

    def test_tampered_labeling(self, capsys, tmp_path, data_dir):
        out = tmp_path / "lab.json"
        main(["label", "-g", "Z2xZ9", "-i", str(data_dir / "two_c4.txt"), "-o", str(out)])
        doc = json.loads(out.read_text())
        doc["arcs"][0]["label"] = "(1,1)" if doc["arcs"][0]["label"] != "(1,1)" else "(0,1)"
        out.write_text(json.dumps(doc))
        code, ver, _ = run(capsys, "verify", "-i", str(out))
        assert code == 2 and not ver["certificate"]["ok"]

    def test_verify_partition(self, capsys, tmp_path):
        out = tmp_path / "p.json"
        main(["partition", "-g", "Z10", "-r", "4,4", "-o", str(out)])
        code, ver, _ = run(capsys, "verify", "-i", str(out))
        assert code == 0 and ver["kind"] == "partition"
        doc = json.loads(out.read_text())
        doc["parts"][0][0] = doc["parts"][1][0]
        out.write_text(json.dumps(doc))
        code, ver, _ = run(capsys, "verify", "-i", str(out))
        assert code == 2
        assert ver["certificate"]["checks"]["disjoint"] is False

    def test_corrupt_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"arcs": [\n')
        code, _, err = run(capsys, "verify", "-i", str(bad))
        assert code == 2 and "bad.json:2" in err
        other = tmp_path / "other.json"
        other.write_text('{"x": 1}')
        assert run(capsys, "verify", "-i", str(other))[0] == 2
        assert run(capsys, "verify", "-i", str(tmp_path / "missing.json"))[0] == 2

    def test_bad_digraph(self, capsys, tmp_path, data_dir):
        code, _, err = run(capsys, "label", "-g", "Z2xZ9", "-i", str(data_dir / "loop.txt"))
        assert code == 2 and "loop.txt:4" in err
        f = tmp_path / "g.txt"
        f.write_text("v a\nv b\na c\n")
        code, _, err = run(capsys, "label", "-g", "Z2xZ9", "-i", str(f))
        assert code == 2 and "g.txt:3" in err

    def test_infeasible_labeling(self, capsys, data_dir):
        code, doc, _ = run(capsys, "label", "-g", "Z2xZ2xZ2", "-i", str(data_dir / "six_vertex_component.txt"))
        assert code == 3 and doc["verdict"] == "infeasible"

    def test_bad_group(self, capsys, data_dir):
        assert run(capsys, "label", "-g", "Q8", "-i", str(data_dir / "two_c4.txt"))[0] == 2


class TestOracle:
    def test_verdicts(self, capsys, schema_validator):
        code, doc, _ = run(capsys, "oracle", "-g", "Z2xZ2xZ2", "-r", "5")
        assert code == 0 and doc["verdict"] == "feasible"
        schema_validator("oracle", doc)
        code, doc, _ = run(capsys, "oracle", "-g", "Z2xZ2xZ2", "-r", "6")
        assert code == 3 and doc["verdict"] == "infeasible"

    def test_forbid(self, capsys):
        code, doc, _ = run(capsys, "oracle", "-g", "Z2xZ9", "-r", "4,4,4,4", "--forbid", "(0,0)", "--forbid", "(1,0)")
        assert code == 0
        flat = [x for p in doc["partition"]["parts"] for x in p]
        assert "(0,0)" not in flat and "(1,0)" not in flat

    def test_unknown(self, capsys):
        code, doc, _ = run(capsys, "oracle", "-g", "Z2xZ2xZ2xZ2", "-r", "6,4,4", "--node-limit", "10")
        assert code == 4 and doc["verdict"] == "unknown"

    def test_bad_element(self, capsys):
        assert run(capsys, "oracle", "-g", "Z10", "-r", "4", "--forbid", "(1,2)")[0] == 2


class TestSweep:
    def test_deterministic(self, capsys, schema_validator):
        args = ("sweep", "--max-order", "12", "--labelings", "5", "--seed", "3")
        code, a, _ = run(capsys, *args)
        assert code == 0
        schema_validator("sweep", a)
        _, b, _ = run(capsys, *args)
        assert a == b
        assert a["labelings"]["verified"] == 5
        assert a["summary"]["disagree"] == 0

    def test_report_dir(self, capsys, tmp_path):
        code, doc, _ = run(capsys, "sweep", "--max-order", "10", "--labelings", "3", "--report-dir", str(tmp_path))
        assert code == 0
        assert set(doc["files"]) == {
            "cross_validation.csv",
            "verdicts.png",
            "oracle_nodes.png",
            "labelings.csv",
            "labelings.png",
        }


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "irrlabel 0.1.0" in capsys.readouterr().out


def test_module_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "irrlabel", "partition", "-g", "Z10", "-r", "4,4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["path"] == "zeng"


@pytest.mark.skipif(shutil.which("irrlabel") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["irrlabel", "oracle", "-g", "Z2xZ2xZ2", "-r", "6"], capture_output=True, text=True)
    assert proc.returncode == 3
