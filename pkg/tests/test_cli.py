import json
import subprocess
import sys

import pytest

from phiseries import cli
from phiseries.plane_graph import catalog
from phiseries.qseries import TruncatedSeries, euler_infinity


@pytest.fixture(autouse=True)
def cache_in_tmp(tmp_path, monkeypatch):
    monkeypatch.setenv("PHI_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_csv_pentagonal(capsys):
    code, out, _ = run(capsys, "compute", "--graph", "catalog:P3", "--order", "20", "--format", "csv")
    assert code == 0
    want = euler_infinity(20)
    assert out == "".join(f"{k},{c}\n" for k, c in enumerate(want))


def test_compute_text(capsys):
    code, out, err = run(capsys, "compute", "--graph", "catalog:G8_2", "--order", "20", "--format", "text")
    assert code == 0
    assert out.startswith("1 - 3q + 3q^2 + 4q^3 - 8q^4 ")
    assert out.rstrip().endswith("- 12q^19 + 19q^20")
    assert any(line.startswith("depth=0 states=1 pruned=") for line in err.splitlines())


def test_compute_json_and_tqft(capsys):
    code, out, _ = run(capsys, "compute", "--graph", "catalog:P2", "--order", "6", "--format", "json", "--mode", "tqft")
    assert code == 0
    assert TruncatedSeries.from_json(out) == TruncatedSeries([1] * 7, 6)


def test_compute_from_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(catalog("G6_2").to_json())
    code, out, _ = run(capsys, "compute", "--graph", f"file:{path}", "--order", "5")
    assert code == 0 and out == "1 - 2q + q^2 + 3q^3 - 2q^4 - 2q^5\n"


def test_compute_errors(capsys, tmp_path):
    code, _, err = run(capsys, "compute", "--graph", "file:missing.json", "--order", "5")
    assert code == 2 and "missing.json" in err
    code, _, err = run(capsys, "compute", "--graph", "catalog:NoSuch")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "vertices": ["a", "b", "c"], "root": "q", '
                   '"outer_face": ["a", "b", "c"], "bounded_faces": [["a", "c", "b"]]}')
    code, _, err = run(capsys, "compute", "--graph", f"file:{bad}")
    assert code == 2 and "root" in err
    bad.write_text("{not json")
    assert run(capsys, "compute", "--graph", f"file:{bad}")[0] == 2
    assert run(capsys, "compute", "--graph", "catalog:P3", "--order", "-1")[0] == 2


def test_engine_assertion_exit_code(capsys, monkeypatch):
    from phiseries.nahm.states import ParityViolation

    def boom(*a, **k):
        raise ParityViolation("odd")
    monkeypatch.setattr(cli, "compute_phi", boom)
    code, _, err = run(capsys, "compute", "--graph", "catalog:P3", "--no-cache")
    assert code == 3 and "odd" in err


def test_cache_round_trip(capsys, cache_in_tmp):
    argv = ("compute", "--graph", "catalog:G7_1", "--order", "12", "--format", "json")
    code1, out1, err1 = run(capsys, *argv)
    files = list(cache_in_tmp.glob("*.json"))
    assert code1 == 0 and len(files) == 1
    entry = json.loads(files[0].read_text())
    assert entry["meta"]["engine_version"] and "timestamp" in entry["meta"]
    code2, out2, err2 = run(capsys, *argv)
    assert code2 == 0 and out2 == out1 and err2 == ""
    code3, out3, _ = run(capsys, *argv, "--no-cache")
    assert out3 == out1


def test_cache_shared_by_presentations(capsys, cache_in_tmp, tmp_path):
    g = catalog("G6_2")
    d = g.to_dict()
    d["bounded_faces"] = [list(reversed(f)) for f in d["bounded_faces"]][::-1]
    d["outer_face"] = d["outer_face"][1:] + d["outer_face"][:1]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(d))
    _, out1, _ = run(capsys, "compute", "--graph", "catalog:G6_2", "--order", "8")
    _, out2, err2 = run(capsys, "compute", "--graph", f"file:{path}", "--order", "8")
    assert out1 == out2 and err2 == ""
    assert len(list(cache_in_tmp.glob("*.json"))) == 1


def test_corrupt_cache_entry_is_ignored(capsys, cache_in_tmp):
    argv = ("compute", "--graph", "catalog:P4", "--order", "10")
    _, out1, _ = run(capsys, *argv)
    (f,) = cache_in_tmp.glob("*.json")
    f.write_text("garbage")
    code, out2, err = run(capsys, *argv)
    assert code == 0 and out2 == out1 and err


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sbb", "--order", "6")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 10 and all(l.startswith("PASS") for l in lines)
    code, out, _ = run(capsys, "verify", "--suite", "theorem1")
    assert code == 0 and "FAIL" not in out


def test_verify_failure_exit(capsys, monkeypatch):
    from phiseries import suites
    monkeypatch.setitem(suites.SUITES, "sbb", lambda order: iter([suites.Check("x", False, "bad")]))
    code, out, _ = run(capsys, "verify", "--suite", "sbb")
    assert code == 1 and out.startswith("FAIL x  bad")


def test_identify_graph(capsys):
    code, out, _ = run(capsys, "identify", "--graph", "catalog:G1_triple", "--order", "20")
    assert code == 0
    assert json.loads(out) == {"status": "found", "factors": [3, 3, 4], "verified_order": 20}


def test_identify_not_found(capsys):
    code, out, _ = run(capsys, "identify", "--graph", "catalog:G8_7", "--order", "20",
                       "--max-factors", "5", "--b-max", "12")
    assert code == 4 and json.loads(out)["status"] == "not_found"


def test_identify_series_file(capsys, tmp_path):
    one = tmp_path / "one.json"
    one.write_text(TruncatedSeries.one(10).to_json())
    code, out, _ = run(capsys, "identify", "--series", f"file:{one}")
    assert code == 0 and json.loads(out)["factors"] == []
    one.write_text('{"order": 3, "coeffs": ["1"]}')
    assert run(capsys, "identify", "--series", f"file:{one}")[0] == 2
    one.write_text(TruncatedSeries([3, 1], 4).to_json())
    assert run(capsys, "identify", "--series", f"file:{one}")[0] == 2
    assert run(capsys, "identify")[0] == 2


def test_oracle_and_catalog_commands(capsys):
    code, out, _ = run(capsys, "oracle", "--graph", "catalog:G6_2", "--order", "5")
    assert code == 0 and out == "1 - 2q + q^2 + 3q^3 - 2q^4 - 2q^5\n"
    code, out, _ = run(capsys, "catalog", "--max-edges", "6")
    assert code == 0 and "G6_1\t" in out and "G7_1" not in out
    code, out, _ = run(capsys, "catalog", "L8a7")
    assert code == 0 and json.loads(out)["name"] == "L8a7"
    assert run(capsys, "catalog", "zzz")[0] == 2


def test_entry_point_subprocess(tmp_path):
    env = {"PHI_CACHE_DIR": str(tmp_path / "c"), "PATH": "/usr/bin:/bin"}
    p = subprocess.run([sys.executable, "-m", "phiseries.cli", "compute", "--graph", "catalog:P3", "--order", "7"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 0 and p.stdout == "1 - q - q^2 + q^5 + q^7\n"
