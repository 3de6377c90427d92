from __future__ import annotations

import json

import pytest

from conftest import DATA
from gridfloer.cli import main, parse_window, InputError


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def parse_tsv(text):
    rows, fields = [], {}
    for line in text.splitlines()[1:]:
        if line.startswith("# "):
            k, _, v = line[2:].partition("\t")
            fields[k] = v
        else:
            rows.append(tuple(int(v) for v in line.split("\t")))
    return rows, fields


def test_compute_tsv(capsys):
    code, out, _ = run(capsys, "compute", DATA / "5_2.grid")
    assert code == 0
    rows, fields = parse_tsv(out)
    assert rows == [(1, 2, 2), (0, 1, 3), (-1, 0, 2)]
    assert fields["genus"] == "1" and fields["fibered"] == "false" and fields["symmetric"] == "true"
    assert fields["alexander"] == "2*t - 3 + 2*t^(-1)"


def test_json_and_tsv_agree(capsys):
    _, tsv, _ = run(capsys, "compute", DATA / "trefoil.grid")
    _, js, _ = run(capsys, "compute", DATA / "trefoil.grid", "--format", "json")
    rows, fields = parse_tsv(tsv)
    body = json.loads(js)
    assert [(r["A"], r["M"], r["rank"]) for r in body["table"]] == rows
    assert str(body["genus"]) == fields["genus"] and body["alexander"] == fields["alexander"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "compute", DATA / "5_2.grid")[1]
    assert run(capsys, "compute", DATA / "5_2.grid")[1] == first
    assert run(capsys, "compute", DATA / "5_2.grid", "--threads", "2")[1] == first


def test_window_and_symmetry_flags(capsys):
    code, out, _ = run(capsys, "compute", DATA / "5_2.grid", "--window", "0..1")
    assert code == 0 and parse_tsv(out)[0] == [(1, 2, 2), (0, 1, 3)]
    code, out, _ = run(capsys, "compute", DATA / "5_2.grid", "--use-symmetry")
    assert parse_tsv(out)[0] == [(1, 2, 2), (0, 1, 3), (-1, 0, 2)]


def test_census(capsys):
    code, out, _ = run(capsys, "census", DATA / "5_2.grid", "--omit", "1,5")
    assert code == 0
    rows, fields = parse_tsv(out)
    assert rows[:2] == [(1, 2, 2), (0, 1, 15)]
    assert fields["comparison"] == "PASS" and fields["omit"] == "1,5"
    code, out, _ = run(capsys, "census", DATA / "unknot.grid")
    assert parse_tsv(out)[1]["polynomial"] == "1 - t^(-1)"


def test_verify_and_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", DATA / "trefoil.grid", "--domains")
    assert code == 0 and "FAIL" not in out and "domains" in out
    code, out, _ = run(capsys, "verify", DATA / "trefoil.grid", "--inject-fault")
    assert code == 3
    assert "FAIL\tdifferential-degree" in out


def test_moves(capsys, tmp_path):
    code, out, _ = run(capsys, "moves", DATA / "unknot.grid", "stabilize:1", "transpose", "rows:1")
    assert code == 0 and out.startswith("n=3")
    path = tmp_path / "moved.grid"
    path.write_text(out)
    code, out, _ = run(capsys, "compute", path)
    assert parse_tsv(out)[0] == [(0, 0, 1)]
    assert run(capsys, "moves", DATA / "unknot.grid", "spin")[0] == 1


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.grid"
    bad.write_text("n=3\nX: 1 2 3\nO: 1 2 3\n")
    assert run(capsys, "compute", bad)[0] == 1
    assert run(capsys, "compute", tmp_path / "missing.grid")[0] == 1
    assert run(capsys, "compute", DATA / "5_2.grid", "--window", "2..0")[0] == 1
    assert run(capsys, "census", DATA / "5_2.grid", "--omit", "4,4")[0] == 1
    code, _, err = run(capsys, "compute", DATA / "5_2.grid", "--max-generators", "100")
    assert code == 2 and "budget" in err
    assert run(capsys, "verify", DATA / "5_2_n10.grid")[0] == 2


def test_parse_window():
    assert parse_window("-1..2") == (-2, 4)
    assert parse_window("1/2..3/2") == (1, 3)
    with pytest.raises(InputError):
        parse_window("1..x")
    with pytest.raises(InputError):
        parse_window("0.25..1")
