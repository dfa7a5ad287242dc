from __future__ import annotations

import json

import pytest
from hypothesis import given

from asp_kit import generators as gen
from asp_kit.cli import main
from asp_kit.io import GraphFormatError, format_graph, parse_graph, read_graph, to_dot, write_graph
from conftest import graphs


@given(graphs(max_n=9))
def test_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_comments_and_blank_lines():
    g = parse_graph("# a triangle\n\n3 3\n0 1\n# middle\n1 2\n2 0\n")
    assert g.m == 3
    text = format_graph(g, ["hello"])
    assert text.startswith("# hello\n3 3\n")


def test_non_integer_labels_are_relabeled():
    g = gen.replace_edges(gen.cycle(3), gen.k5_minus())
    h = parse_graph(format_graph(g))
    assert (h.n, h.m) == (g.n, g.m)


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("", None, "missing"),
        ("3\n", 1, "expected 2"),
        ("3 1\n0 x\n", 2, "non-integer"),
        ("3 1\n0 3\n", 2, "out of range"),
        ("3 1\n1 1\n", 2, "self-loop"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("3 2\n0 1\n", None, "announces 2"),
    ],
)
def test_format_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text, source="g.txt")
    assert err.value.line == line and fragment in str(err.value)
    assert str(err.value).startswith("g.txt:")


def test_file_io(tmp_path):
    p = tmp_path / "k4.txt"
    write_graph(gen.complete_graph(4), p)
    assert read_graph(p) == gen.complete_graph(4)


def test_dot_output():
    dot = to_dot(gen.cycle(3), highlight=[(0, 1)], name="T")
    assert dot.startswith("graph T {") and '"0" -- "1" [color=red' in dot
    assert dot.count("red") == 1


# --- CLI -------------------------------------------------------------------------


def _write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(format_graph(g), encoding="ascii")
    return str(p)


def test_classify_exit_codes(tmp_path, capsys):
    assert main(["classify", _write(tmp_path, "k6.txt", gen.complete_graph(6))]) == 0
    assert main(["classify", "--aspp", _write(tmp_path, "k6b.txt", gen.complete_graph(6))]) == 1
    pet = _write(tmp_path, "pet.txt", gen.petersen())
    dot = tmp_path / "pet.dot"
    assert main(["classify", "--json", "--dot", str(dot), pet]) == 1
    rec = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rec["verdict"] == "NonASP" and rec["member"] is False and rec["witness"]["shape"]
    assert "red" in dot.read_text()
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 0\n")
    assert main(["classify", str(bad)]) == 2
    assert "bad.txt:2" in capsys.readouterr().err
    assert main(["classify", str(tmp_path / "missing.txt")]) == 2


def test_classify_json_is_stable(tmp_path, capsys):
    p = _write(tmp_path, "w.txt", gen.wheel_mod(7))
    outs = []
    for _ in range(2):
        main(["classify", "--json", p])
        rec = json.loads(capsys.readouterr().out)
        rec.pop("seconds")
        outs.append(json.dumps(rec, sort_keys=True))
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["family"] == "Sr_Wr(7)"


def test_color_exit_codes(tmp_path, capsys):
    assert main(["color", "--k", "3", _write(tmp_path, "prism.txt", gen.prism())]) == 0
    assert capsys.readouterr().out.startswith("# 3 colors")
    assert main(["color", "--k", "5", "--json", _write(tmp_path, "k6.txt", gen.complete_graph(6))]) == 3
    rec = json.loads(capsys.readouterr().out)
    assert rec["exception"] == "K6Exception" and rec["palette_size"] == 6
    assert main(["color", "--exact", "--json", _write(tmp_path, "d4.txt", gen.d_graph(4))]) == 0
    assert json.loads(capsys.readouterr().out)["palette_size"] == 4
    assert main(["color", "--k", "3", _write(tmp_path, "k4.txt", gen.complete_graph(4))]) == 2


def test_generate_files(tmp_path, capsys):
    assert main(["generate", "wheel", "7", "--out", str(tmp_path)]) == 0
    assert read_graph(tmp_path / "wheel_7.txt") == gen.wheel(7)
    assert main(["generate", "gadget-k5minus", "c3", "--skip", "0", "1", "--out", str(tmp_path)]) == 0
    assert read_graph(tmp_path / "gadget-k5minus_c3_skip0-1.txt").n == 9
    assert main(["generate", "petersen", "--out", "-"]) == 0
    assert "10 15" in capsys.readouterr().out
    assert main(["generate", "wheel", "--out", str(tmp_path)]) == 2
    assert main(["generate", "gadget-y", "q7", "--out", str(tmp_path)]) == 2


def test_generate_corpus(tmp_path):
    assert main(["generate", "corpus", "--seed", "3", "--count", "5", "--max-n", "60", "--out", str(tmp_path)]) == 0
    rows = [json.loads(x) for x in (tmp_path / "corpus_seed3_manifest.jsonl").read_text().splitlines()]
    assert len(rows) == 5
    for row in rows:
        g = read_graph(tmp_path / row["file"])
        assert (g.n, g.m) == (row["n"], row["m"])


def test_verify_command(capsys):
    assert main(["verify", "--max-n", "5"]) == 0
    assert "0 mismatches" in capsys.readouterr().out
    assert main(["verify", "--max-n", "3", "--checks", "bogus"]) == 2
