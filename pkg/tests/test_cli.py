from __future__ import annotations

import json
import time

import pytest

from schubert_rigidity import cache as cache_mod
from schubert_rigidity.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(md: str) -> int:
    return len(md.splitlines()) - 2


def test_catalog_counts(capsys):
    code, out, _ = run(capsys, "catalog", "E6", "6", "--format", "md")
    assert code == 0 and rows(out) == 27
    code, out, _ = run(capsys, "catalog", "A3", "2")
    assert code == 0 and rows(out) == 6


def test_catalog_b9_is_fast(capsys):
    t = time.perf_counter()
    code, out, _ = run(capsys, "catalog", "B9", "1", "--no-cache")
    assert code == 0 and rows(out) == 18
    assert time.perf_counter() - t < 1.0


def test_catalog_json_and_cache_reuse(capsys, tmp_path):
    args = ("catalog", "C3", "3", "--format", "json", "--cache", str(tmp_path))
    code, first, _ = run(capsys, *args)
    assert code == 0 and list(tmp_path.glob("*.json"))
    code, second, _ = run(capsys, *args)
    assert first == second
    data = json.loads(first)
    assert data["schema_version"] == 1 and data["chss"] == "C3/P3" and len(data["records"]) == 8


def test_stale_cache_is_not_served(capsys, tmp_path, monkeypatch):
    args = ("catalog", "A3", "2", "--format", "json", "--cache", str(tmp_path))
    run(capsys, *args)
    for p in tmp_path.glob("*.json"):
        p.write_text('{"schema_version": 1, "chss": "stale", "generated_at": "", "records": []}')
    _, out, _ = run(capsys, *args)
    assert json.loads(out)["chss"] == "stale"
    monkeypatch.setattr(cache_mod, "code_version", lambda: "other")
    _, out, _ = run(capsys, *args)
    assert json.loads(out)["chss"] == "A3/P2"


def test_classify_partition(capsys):
    code, out, _ = run(capsys, "classify", "A10", "5", "--partition", "6 4^2 1^2", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert (rec["a"], rec["J"], rec["dim"]) == (1, [1, 3, 7, 10], 14)
    assert rec["dual"] == {"a": 2, "J": [2, 4, 6, 9]}
    assert rec["dual_partition"] == "5^2 2^2" and rec["suit"] == "spade"


def test_classify_word(capsys):
    code, out, _ = run(capsys, "classify", "E7", "7", "--word", "76542", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and (rec["a"], rec["J"], rec["dim"]) == (0, [3], 5)


def test_classify_not_proper(capsys):
    code, out, _ = run(capsys, "classify", "A4", "2", "--aJ", "0;{}", "--format", "json")
    assert code == 0
    assert any(n.startswith("NotProper") for n in json.loads(out)["notices"])


def test_non_realizable_descriptor_exits_2(capsys):
    code, _, err = run(capsys, "classify", "A5", "3", "--aJ", "2;{1}")
    assert code == 2 and "realizab" in err and "tables bigone" in err


@pytest.mark.parametrize("argv", [
    ("classify", "B3", "3", "--word", "3"),
    ("classify", "A4", "2", "--word", "1"),
    ("classify", "C4", "4", "--partition", "1"),
    ("catalog", "Q4", "1"),
])
def test_bad_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_span_bound_minimum(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["schur", "A4", "2", "--span-bound", "10"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_tables(capsys):
    code, out, err = run(capsys, "tables", "E6")
    assert code == 0 and rows(out) == 6 and "identical" in err
    code, out, _ = run(capsys, "tables", "suit", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 5


def test_tables_mismatch_exits_1(capsys, monkeypatch):
    from schubert_rigidity import tables

    data = json.loads(json.dumps(tables.golden()))
    data["E6"]["rows"][0]["a"] = 5
    monkeypatch.setattr(tables, "golden", lambda: data)
    code, _, err = run(capsys, "tables", "E6")
    assert code == 1 and "DIFF" in err


def test_internal_assertion_exits_1(capsys, monkeypatch):
    from schubert_rigidity import cli

    def boom(*a, **k):
        raise AssertionError("broken invariant")

    monkeypatch.setattr(cli, "make_record", boom)
    code, _, err = run(capsys, "classify", "A4", "2", "--word", "2")
    assert code == 1 and "broken invariant" in err


def test_rigidity_and_schur(capsys):
    code, out, _ = run(capsys, "rigidity", "E6", "6", "--hplus-only", "--format", "json")
    recs = json.loads(out)["records"]
    assert code == 0 and len(recs) == 6 and all(r["h_plus"] for r in recs)
    code, out, _ = run(capsys, "schur", "E6", "6", "--format", "json", "--jobs", "2")
    recs = json.loads(out)["records"]
    assert code == 0 and len(recs) == 6 and {r["schur"] for r in recs} == {"equal"}
    code, out, _ = run(capsys, "schur", "A3", "2", "--word", "2", "--format", "json")
    assert json.loads(out)["records"][0]["schur"] == "filtered"


def test_partition_command(capsys):
    code, out, _ = run(capsys, "partition", "5", "11", "6 4^2 1^2", "--format", "json")
    assert code == 0 and json.loads(out)["J"] == [1, 3, 7, 10]
    code, out, _ = run(capsys, "partition", "5", "11", "--aJ", "1;{1,3,7,10}", "--format", "json")
    assert code == 0 and json.loads(out)["partition"] == "6 4^2 1^2"
    assert run(capsys, "partition", "3", "6", "--aJ", "2;{1}")[0] == 2
    assert run(capsys, "partition", "3", "6")[0] == 2
