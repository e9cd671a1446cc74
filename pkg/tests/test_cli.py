import json

import networkx as nx
import pytest

from ccv import formats
from ccv.cli import main
from ccv.named import named_graph

GAMMA1_HEAD = "cvg 1\nv 1\nd 0 0 1\nd 1 0 0\nd 2 0 2\nl 0 1\nl 1 1\nl 2 1\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _iso(g6_text, name):
    a = nx.from_graph6_bytes(g6_text.strip().encode())
    return nx.is_isomorphic(a, formats.to_networkx(named_graph(name)))


def test_family_to_cover_q3(tmp_path, capsys):
    cvg = tmp_path / "delta_06.cvg"
    code, _, _ = run(capsys, "family", "--index", "6", "--m", "2", "--r", "1", "--out", str(cvg))
    assert code == 0
    out = tmp_path / "q3.g6"
    code, _, _ = run(capsys, "cover", "--in", str(cvg), "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert text == "GhELQg\n"
    assert _iso(text, "Q3")


def test_family_outputs(tmp_path, capsys):
    out = tmp_path / "tc.g6"
    assert run(capsys, "family", "--index", "25", "--m", "10", "--r", "1", "--s", "3", "--out", str(out))[0] == 0
    assert nx.from_graph6_bytes(out.read_text().strip().encode()).number_of_nodes() == 30
    out = tmp_path / "k33.g6"
    assert run(capsys, "family", "--index", "4", "--m", "3", "--r", "1", "--s", "2", "--out", str(out))[0] == 0
    assert _iso(out.read_text(), "K33")


def test_family_inadmissible(capsys):
    code, out, err = run(capsys, "family", "--index", "1", "--m", "5", "--r", "1", "--explain")
    assert code == 1
    assert "m even" in err
    assert out == ""


def test_family_unknown_index(capsys):
    assert run(capsys, "family", "--index", "26", "--m", "4", "--r", "1")[0] == 1


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.cvg"
    bad.write_text("cvg 1\nv 1\nd 0 zero 1\n")
    code, _, err = run(capsys, "check", "--in", str(bad))
    assert code == 1
    assert "line 3" in err and "column" in err


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "check", "--in", str(tmp_path / "nope.cvg"))[0] == 1


@pytest.mark.parametrize("argv", [[], ["cover"], ["family", "--m", "4"], ["bogus"], ["families", "show"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_check_flags(tmp_path, capsys):
    f = tmp_path / "a.cvg"
    run(capsys, "family", "--index", "2", "--m", "5", "--r", "2", "--s", "1", "--out", str(f))
    code, out, _ = run(capsys, "check", "--in", str(f))
    assert code == 0
    assert json.loads(out) == dict.fromkeys(["ccv", "connected", "cubic", "extendable", "simple"], True)

    semi0 = tmp_path / "semi0.cvg"
    semi0.write_text(GAMMA1_HEAD + "i 0 4\nz 0 1\nz 1 3\nz 2 0\n")
    flags = json.loads(run(capsys, "check", "--in", str(semi0))[1])
    assert flags["simple"] is False and flags["connected"] is True and flags["ccv"] is False

    gcd = tmp_path / "gcd.cvg"
    gcd.write_text(GAMMA1_HEAD + "i 0 8\nz 0 2\nz 1 6\nz 2 4\n")
    flags = json.loads(run(capsys, "check", "--in", str(gcd))[1])
    assert flags["connected"] is False and flags["simple"] is True


def test_cover_non_simple(tmp_path, capsys):
    semi0 = tmp_path / "semi0.cvg"
    semi0.write_text(GAMMA1_HEAD + "i 0 4\nz 0 1\nz 1 3\nz 2 0\n")
    assert run(capsys, "cover", "--in", str(semi0), "--out", str(tmp_path / "x.g6"))[0] == 1
    assert run(capsys, "cover", "--in", str(semi0), "--out", str(tmp_path / "x.dgf"))[0] == 0
    g = formats.parse_dgf((tmp_path / "x.dgf").read_text())
    assert g.n_vertices == 4 and not g.is_simple()


def test_analyze_named(capsys):
    code, out, _ = run(capsys, "analyze", "--name", "Petersen")
    rep = json.loads(out)
    assert code == 0
    assert rep["vertex_transitive"] is True and rep["girth"] == 5 and rep["aut_order"] == 120
    assert rep["cycle_regular_by_c"]["5"] is True

    rep = json.loads(run(capsys, "analyze", "--name", "TutteCoxeter", "--max-c", "8")[1])
    assert rep["girth"] == 8 and rep["aut_order"] == 1440 and rep["arc_transitive"] is True


def test_analyze_gamma12(tmp_path, capsys):
    f = tmp_path / "g12.cvg"
    run(capsys, "family", "--index", "12", "--m", "6", "--r", "4", "--out", str(f))
    rep = json.loads(run(capsys, "analyze", "--in", str(f))[1])
    assert rep["vertex_transitive"] is False


def test_analyze_rejects_non_cubic(tmp_path, capsys):
    q = tmp_path / "q.dgf"
    run(capsys, "family", "--index", "6", "--m", "2", "--r", "1", "--out", str(q))
    assert run(capsys, "analyze", "--in", str(q))[0] == 0
    semi0 = tmp_path / "semi0.cvg"
    semi0.write_text(GAMMA1_HEAD + "i 0 4\nz 0 1\nz 1 3\nz 2 0\n")
    assert run(capsys, "analyze", "--in", str(semi0))[0] == 1


def test_convert_round_trips(tmp_path, capsys):
    cvg = tmp_path / "a.cvg"
    run(capsys, "family", "--index", "22", "--m", "6", "--r", "2", "--s", "1", "--out", str(cvg))
    cvg2 = tmp_path / "b.cvg"
    assert run(capsys, "convert", "--in", str(cvg), "--out", str(cvg2))[0] == 0
    assert cvg.read_bytes() == cvg2.read_bytes()

    dgf = tmp_path / "p.dgf"
    run(capsys, "cover", "--in", str(cvg), "--out", str(dgf))
    dgf2 = tmp_path / "p2.dgf"
    assert run(capsys, "convert", "--in", str(dgf), "--out", str(dgf2))[0] == 0
    assert dgf.read_bytes() == dgf2.read_bytes()

    g6 = tmp_path / "p.g6"
    run(capsys, "convert", "--in", str(dgf), "--out", str(g6))
    assert _iso(g6.read_text(), "Pappus")
    back = tmp_path / "p3.dgf"
    run(capsys, "convert", "--in", str(g6), "--out", str(back))
    assert nx.is_isomorphic(
        formats.to_networkx(formats.parse_dgf(back.read_text())),
        formats.to_networkx(named_graph("Pappus")),
    )
    assert run(capsys, "convert", "--in", str(g6), "--out", str(tmp_path / "x.cvg"))[0] == 1


def test_enumerate_quotients(tmp_path, capsys):
    out = tmp_path / "classes"
    code, text, _ = run(capsys, "enumerate-quotients", "--max-vertices", "3", "--out", str(out))
    assert code == 0
    assert json.loads(text)["count"] == 25
    files = sorted(p.name for p in out.glob("class_*.cvg"))
    assert len(files) == 25
    man = json.loads((out / "manifest.json").read_text())
    assert [c["file"] for c in man["classes"]] == files
    for name in files:
        formats.parse_cvg((out / name).read_text())


def test_families_list(capsys):
    code, out, _ = run(capsys, "families", "list")
    assert code == 0
    assert len(out.splitlines()) == 25


def test_quotient_heawood(capsys):
    code, out, _ = run(capsys, "quotient", "--name", "Heawood")
    assert code == 0
    assert json.loads(out)["indices"] == [4, 13, 18]


def test_census_small(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CCV_MAX_ORDER", "16")
    j = tmp_path / "c.json"
    code, out, _ = run(capsys, "census", "--json", str(j))
    assert code == 0
    assert "disagreements 0" in out
    rows = json.loads(j.read_text())
    assert rows and all(r["order"] <= 16 for r in rows)
    assert set(rows[0]) == {"index", "m", "r", "s", "order", "vt", "clause", "aut_order", "girth"}


def test_deterministic(capsys):
    a = run(capsys, "analyze", "--name", "Heawood")[1]
    b = run(capsys, "analyze", "--name", "Heawood")[1]
    assert a == b
