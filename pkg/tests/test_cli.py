import json

import pytest

from wagmine.cli import main
from wagmine.mine import ParaphrasePair

from .conftest import ECONOMY


@pytest.fixture
def economy_file(tmp_path):
    path = tmp_path / "economy.txt"
    path.write_text("\n".join(ECONOMY) + "\n")
    return path


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_mine_economy(economy_file, tmp_path):
    out = tmp_path / "out"
    assert main(["mine", "--input", str(economy_file), "--out-dir", str(out)]) == 0
    for name in ("pairs.jsonl", "optionals.jsonl", "pairs.tsv", "graph.json", "graph.dot", "groups.json", "run.json"):
        assert (out / name).is_file(), name
    pairs = read_jsonl(out / "pairs.jsonl")
    assert [(p["phrase_a"], p["phrase_b"]) for p in pairs] == [("gotten rid of", "shrugged off")]
    assert pairs[0]["domain"] == "economy"
    assert [o["phrase"] for o in read_jsonl(out / "optionals.jsonl")] == ["already", "completely"]
    groups = json.loads((out / "groups.json").read_text())
    assert groups == {"groups": [{"group": 0, "members": [1, 2, 3]}]}
    report = json.loads((out / "run.json").read_text())
    assert report["counts"]["alignments"] == report["counts"]["expected_alignments"] == 3
    assert report["config"]["max_phrase_len"] == 3
    assert report["wall_time"] > 0


def test_mine_snips_like_file(data_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["mine", "--input", str(data_dir / "get_weather.txt"), "--out-dir", str(out)]) == 0
    counts = json.loads((out / "run.json").read_text())["counts"]
    assert counts["sentences"] == 32
    assert counts["alignments"] == 496
    assert read_jsonl(out / "pairs.jsonl")


def test_empty_file_exit_1(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("\n\n")
    for cmd in ("mine", "graph", "clean"):
        assert main([cmd, "--input", str(path), "--out-dir", str(tmp_path / cmd)]) == 1
        assert "empty document" in capsys.readouterr().err


def test_missing_input_exit_1(tmp_path, capsys):
    assert main(["mine", "--input", str(tmp_path / "nope.txt"), "--out-dir", str(tmp_path)]) == 1
    assert "no such file" in capsys.readouterr().err


def test_bad_format_exit_1(economy_file, tmp_path):
    assert main(["mine", "--input", str(economy_file), "--out-dir", str(tmp_path), "--formats", "xml"]) == 1


def test_graph_strip_punct(economy_file, tmp_path):
    out = tmp_path / "g"
    assert main(["graph", "--input", str(economy_file), "--out-dir", str(out), "--strip-punct"]) == 0
    dot = (out / "graph.dot").read_text()
    assert '"."' not in dot
    assert dot.count("shape=point") == 2
    graph = json.loads((out / "graph.json").read_text())
    assert len([n for n in graph["nodes"] if n["kind"] == "WORD"]) == 16
    assert not (out / "pairs.jsonl").exists()


def test_graph_single_sentence_is_line(tmp_path):
    path = tmp_path / "one.txt"
    path.write_text("show me the weather\n")
    assert main(["graph", "--input", str(path), "--out-dir", str(tmp_path)]) == 0
    graph = json.loads((tmp_path / "graph.json").read_text())
    assert [n["label"] for n in graph["nodes"]] == ["START", "show", "me", "the", "weather", "END"]
    assert len(graph["edges"]) == 5


def test_graph_incompatible_sentences_give_two_branches(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("Yesterday I saw him\nI saw him yesterday\n")
    assert main(["graph", "--input", str(path), "--out-dir", str(tmp_path), "--no-monotone-align"]) == 0
    graph = json.loads((tmp_path / "graph.json").read_text())
    groups = json.loads((tmp_path / "groups.json").read_text())["groups"]
    assert [g["members"] for g in groups] == [[1], [2]]
    start = graph["start"]
    assert len([e for e in graph["edges"] if e["from"] == start]) == 2
    assert all(len(n["occurrences"]) == 1 for n in graph["nodes"] if n["kind"] == "WORD")


def test_clean(economy_file, tmp_path):
    assert main(["clean", "--input", str(economy_file), "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "essential.txt").read_text().splitlines()
    assert lines == [
        "the world economy has fully recovered from the crisis .",
        "the world economy has shrugged off the crisis .",
        "the world economy has gotten rid of the crisis .",
    ]


def test_clean_without_optionals(tmp_path):
    path = tmp_path / "plain.txt"
    path.write_text("Book a table\nReserve two seats\n")
    assert main(["clean", "--input", str(path), "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "essential.txt").read_text() == "book a table\nreserve NUM seats\n"  # normal forms, numbers masked


def test_eval_with_db_and_labels(economy_file, tmp_path):
    db = tmp_path / "db.tsv"
    db.write_text("shrugged off\tgotten rid of\nneed\twant\n")
    labels = tmp_path / "labels.tsv"
    labels.write_text("gotten rid of\tshrugged off\t1\n")
    out = tmp_path / "e"
    argv = ["eval", "--input", str(economy_file), "--out-dir", str(out), "--db", str(db), "--labels", str(labels)]
    assert main(argv) == 0
    coverage = json.loads((out / "coverage.json").read_text())
    assert coverage == {"source": "db.tsv", "total": 1, "found": 1, "fraction": 1.0}
    precision = json.loads((out / "precision.json").read_text())
    assert precision["precision"] == 1.0


def test_eval_table_fixture_from_pairs_file(tmp_path):
    pairs = tmp_path / "pairs.jsonl"
    labels = tmp_path / "labels.tsv"
    rows, judged = [], []
    for k in range(173):
        rows.append(json.dumps(ParaphrasePair((f"go{k}",), (f"move{k}",), "hotel").to_json()))
        judged.append(f"go{k}\tmove{k}\t{1 if k % 2 == 0 and k < 168 else 0}")
    pairs.write_text("\n".join(rows) + "\n")
    labels.write_text("\n".join(judged) + "\n")
    db = tmp_path / "db.tsv"
    db.write_text("go0\tmove0\n")
    out = tmp_path / "e"
    argv = ["eval", "--pairs", str(pairs), "--labels", str(labels), "--db", str(db), "--out-dir", str(out)]
    assert main(argv) == 0
    report = json.loads((out / "precision.json").read_text())
    assert (report["extracted"], report["valid"]) == (173, 84)
    assert abs(100 * report["precision"] - 48.55) <= 0.01


def test_eval_missing_db_exit_1(economy_file, tmp_path, capsys):
    argv = ["eval", "--input", str(economy_file), "--out-dir", str(tmp_path), "--db", str(tmp_path / "missing.tsv")]
    assert main(argv) == 1
    assert "missing.tsv" in capsys.readouterr().err


def test_multiple_inputs_get_subfolders(economy_file, data_dir, tmp_path):
    argv = ["mine", "--input", str(economy_file), "--input", str(data_dir / "get_weather.txt"), "--out-dir", str(tmp_path)]
    assert main(argv) == 0
    assert (tmp_path / "economy" / "pairs.jsonl").is_file()
    assert (tmp_path / "get_weather" / "pairs.jsonl").is_file()


def test_mine_is_deterministic(data_dir, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert main(["mine", "--input", str(data_dir / "get_weather.txt"), "--out-dir", str(out)]) == 0
        outs.append(out)
    for name in ("pairs.jsonl", "groups.json", "graph.json", "graph.dot", "optionals.jsonl"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
