import json
import os
from xml.etree import ElementTree

import pytest

from farey_hopf import selftest
from farey_hopf.cli import main
from farey_hopf.oracles import general_mountain_counts


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_farey_expand(capsys):
    assert run(capsys, "farey", "expand", "-7/3") == (0, "[-3,-2,-2]\n", "")


def test_farey_neighbors(capsys):
    assert run(capsys, "farey", "neighbors", "-5/2") == (0, "c: -2, a: -3\n", "")


def test_farey_path(capsys):
    assert run(capsys, "farey", "path", "-4", "1") == (0, "-4 -3 -2 -1 0 1\n", "")


def test_farey_sum(capsys):
    assert run(capsys, "farey", "sum", "inf", "-2", "--k", "3")[1] == "-7/3\n"


def test_farey_domain_error(capsys):
    code, _, err = run(capsys, "farey", "expand", "-1/2")
    assert code == 2 and "error" in err


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "5", "1", "--case", "LL", "--k1", "1", "--k2", "1")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 8


def test_enumerate_json_rotations(capsys):
    code, out, _ = run(capsys, "enumerate", "3", "2", "--case", "LL", "--k1", "0", "--k2", "0", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert sorted(tuple(r["rot"]) for r in rows) == [("-1", "-1"), ("1", "1")]


def test_enumerate_csv_columns(capsys):
    _, out, _ = run(capsys, "enumerate", "5", "2", "--case", "SL", "--k1", "1", "--k2", "1", "--format", "csv")
    assert out.splitlines()[0] == "index,class,tb1,tb2,rot1,rot2,euler,loose1,loose2"


def test_enumerate_bad_lens(capsys):
    assert run(capsys, "enumerate", "4", "2")[0] == 2


def test_enumerate_rejects_svg(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "5", "1", "--format", "svg"])
    assert exc.value.code == 2


def test_mountain_missing_k(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mountain", "5", "1", "--fix", "2"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_mountain_json_counts(capsys):
    code, out, _ = run(capsys, "mountain", "5", "2", "--fix", "1", "--k", "0", "--format", "json")
    doc = json.loads(out)
    feats = [f for f in doc["features"] if not f["derived"]]
    fwd = sum(1 for f in feats if f["type"] == "forward" and f["base"][0][1] == "2/5")
    back = sum(1 for f in feats if f["type"] == "back" and f["base"][0][1] == "2/5")
    low = sum(1 for f in feats if f["type"] == "V" and f["base"][0][1] == "2/5")
    high = sum(1 for f in feats if f["type"] == "V" and f["base"][0][1] == "7/5")
    assert code == 0
    assert (fwd, back, low, high) == general_mountain_counts((-3, -2), 0)


def test_mountain_svg(tmp_path, capsys):
    path = tmp_path / "out.svg"
    code, out, _ = run(capsys, "mountain", "5", "1", "--fix", "2", "--k", "0", "--svg", str(path))
    assert code == 0 and out == ""
    root = ElementTree.fromstring(path.read_bytes())
    titles = [e.text for e in root.iter() if e.tag.endswith("title")]
    assert titles.count("V") == 1
    assert titles.count("forward") == 1 and titles.count("back") == 1
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]


def test_output_file_atomic(tmp_path, capsys):
    path = tmp_path / "reps.csv"
    code, out, _ = run(capsys, "enumerate", "5", "1", "--k1", "1", "--k2", "1", "--format", "csv", "-o", str(path))
    assert code == 0 and out == ""
    assert len(path.read_text().splitlines()) == 9
    assert sorted(os.listdir(tmp_path)) == ["reps.csv"]


def test_unwritable_destination(tmp_path, capsys):
    code, _, err = run(capsys, "farey", "expand", "-7/3", "-o", str(tmp_path / "missing" / "x.txt"))
    assert code == 1 and "I/O" in err


def test_surgery_ascii(capsys):
    code, out, _ = run(capsys, "surgery", "5", "2", "--case", "LS", "--k1", "0", "--k2", "1")
    assert code == 0
    assert out.count("# class") == 3
    assert "[+1]" in out and "[-1]" in out


def test_surgery_class_selection(capsys):
    code, out, _ = run(capsys, "surgery", "5", "2", "--case", "LS", "--k1", "0", "--k2", "1", "--class", "2:1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc) == 1 and doc[0]["class"] == [[2, 1]]
    assert {c["role"] for c in doc[0]["diagram"]["components"]} == {"L1", "L2", "Aux"}


def test_surgery_svg_needs_single(capsys):
    assert run(capsys, "surgery", "5", "2", "--case", "LS", "--k2", "1", "--format", "svg")[0] == 2
    code, out, _ = run(capsys, "surgery", "5", "2", "--case", "LS", "--k2", "1", "--index", "1", "--format", "svg")
    assert code == 0 and "<svg" in out


def test_deterministic_output(capsys):
    first = run(capsys, "enumerate", "7", "3", "--case", "LL", "--k1", "2", "--k2", "1", "--format", "json")
    second = run(capsys, "enumerate", "7", "3", "--case", "LL", "--k1", "2", "--k2", "1", "--format", "json")
    assert first == second


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "fast", "--only", "1", "6")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["PASS", "PASS"]


def test_selftest_reports_fault(monkeypatch, capsys):
    # Flip the sign of one rotation oracle entry: the report names the cell.
    real = selftest.oracles.table2_rot

    def flipped(p, k1, k2):
        ms = real(p, k1, k2)
        if (k1, k2) == (1, 1):
            (a, b), n = next(iter(ms.items()))
            ms = ms.copy()
            ms[(a, b)] -= 1
            ms[(-a - 1, b)] += 1
        return ms

    monkeypatch.setattr(selftest.oracles, "table2_rot", flipped)
    code, out, _ = run(capsys, "selftest", "fast", "--only", "3")
    assert code == 3
    assert out.startswith("FAIL")
    assert "rotation cell (1,1)" in out
