"""Command line interface behavior via click's test runner."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from captioncheck.cli import main

DATA = Path(__file__).parent / "data"
BUNDLED = Path(__file__).parent.parent / "corpus"


@pytest.fixture
def runner():
    return CliRunner()


def write_csv(path, rows):
    lines = ["date,value"] + [f"{d},{v}" for d, v in rows]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def peak_csv(tmp_path):
    """Rise to a sharp apex in 2003, then fall."""
    return write_csv(tmp_path / "peak.csv", [
        ("2000-01-01", 1), ("2001-01-01", 2), ("2002-01-01", 3),
        ("2003-01-01", 8), ("2004-01-01", 3),
    ])


@pytest.fixture
def falling_csv(tmp_path):
    return write_csv(tmp_path / "fall.csv", [
        ("2000-01-01", 5), ("2001-01-01", 4), ("2002-01-01", 3),
        ("2003-01-01", 2), ("2004-01-01", 1),
    ])


@pytest.fixture
def zigzag_csv(tmp_path):
    return write_csv(tmp_path / "zig.csv", [
        ("2000-01-01", 0), ("2001-01-01", 10), ("2002-01-01", 0),
        ("2003-01-01", 10), ("2004-01-01", 0), ("2005-01-01", 10),
        ("2006-01-01", 0),
    ])


def caption_file(tmp_path, text):
    p = tmp_path / "caption.txt"
    p.write_text(text + "\n")
    return str(p)


class TestFeaturesCommand:
    def test_prints_feature_json(self, runner, peak_csv):
        res = runner.invoke(main, ["features", peak_csv])
        assert res.exit_code == 0
        feats = json.loads(res.output)["features"]
        assert feats[0]["rank"] == 1
        assert {"kind", "persistence", "rank"} <= set(feats[0])

    def test_top_limits_count(self, runner, peak_csv):
        res = runner.invoke(main, ["features", peak_csv, "--top", "1"])
        assert len(json.loads(res.output)["features"]) == 1

    def test_accepts_json_series(self, runner, tmp_path):
        p = tmp_path / "series.json"
        p.write_text(json.dumps({"points": [
            {"t": "2000-01-01", "y": 1}, {"t": "2001-01-01", "y": 5},
            {"t": "2002-01-01", "y": 2},
        ]}))
        res = runner.invoke(main, ["features", str(p)])
        assert res.exit_code == 0
        assert json.loads(res.output)["features"]

    def test_window_options_clip_data(self, runner, peak_csv):
        res = runner.invoke(main, [
            "features", peak_csv, "--xmin", "2000-01-01",
            "--xmax", "2001-01-01"])
        feats = json.loads(res.output)["features"]
        # two visible points leave a single trend
        assert len(feats) == 1
        assert feats[0]["kind"] == "trend"

    def test_missing_file_exits_two(self, runner, tmp_path):
        res = runner.invoke(main, ["features", str(tmp_path / "nope.csv")])
        assert res.exit_code == 2
        assert "error:" in res.stderr

    def test_malformed_csv_exits_two(self, runner, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("date,value\n2000-01-01,notanumber\n2001-01-01,2\n")
        res = runner.invoke(main, ["features", str(p)])
        assert res.exit_code == 2


class TestLintCommand:
    def test_clean_caption_silent_and_zero(self, runner, peak_csv, tmp_path):
        cap = caption_file(tmp_path, "The value peaked in 2003.")
        res = runner.invoke(main, ["lint", peak_csv, cap])
        assert res.exit_code == 0
        assert res.output == ""

    def test_factual_error_line_and_exit_one(self, runner, falling_csv,
                                             tmp_path):
        cap = caption_file(tmp_path, "Prices soared from 2000 to 2002.")
        res = runner.invoke(main, ["lint", falling_csv, cap])
        assert res.exit_code == 1
        line = res.output.splitlines()[0]
        assert line.startswith("factual:")
        kind, span, _ = line.split(":", 2)
        lo, hi = span.split("-")
        assert int(lo) < int(hi)

    def test_mismatch_exits_zero_by_default(self, runner, zigzag_csv,
                                            tmp_path):
        cap = caption_file(tmp_path, "The value rose from 2000 to 2006.")
        res = runner.invoke(main, ["lint", zigzag_csv, cap])
        assert res.exit_code == 0
        assert res.output.startswith("mismatch:")

    def test_strict_promotes_mismatch_to_failure(self, runner, zigzag_csv,
                                                 tmp_path):
        cap = caption_file(tmp_path, "The value rose from 2000 to 2006.")
        res = runner.invoke(main, ["lint", zigzag_csv, cap, "--strict"])
        assert res.exit_code == 1

    def test_json_output_carries_full_result(self, runner, peak_csv,
                                             tmp_path):
        cap = caption_file(tmp_path, "The value peaked in 2003.")
        res = runner.invoke(main, ["lint", peak_csv, cap, "--json"])
        assert res.exit_code == 0
        doc = json.loads(res.output)
        assert {"features", "references", "diagnostics"} <= set(doc)
        assert doc["diagnostics"] == []

    def test_custom_lexicon_enables_new_verb(self, runner, falling_csv,
                                             tmp_path):
        cap = caption_file(tmp_path, "Prices cratered from 2000 to 2004.")
        before = runner.invoke(main, ["lint", falling_csv, cap, "--json"])
        assert json.loads(before.output)["references"] == []
        # inflected forms ride along as synonyms; the lemmatizer leaves
        # words it does not know untouched
        lex = tmp_path / "lex.tsv"
        lex.write_text("fall\tcrater\tcratered craters cratering\n")
        after = runner.invoke(main, [
            "lint", falling_csv, cap, "--json", "--lexicon", str(lex)])
        refs = json.loads(after.output)["references"]
        assert len(refs) == 1
        assert refs[0]["target"] == {"kind": "trend", "start": 0, "end": 4}
        assert refs[0]["factualError"] is False

    def test_missing_caption_exits_two(self, runner, peak_csv, tmp_path):
        res = runner.invoke(main, ["lint", peak_csv,
                                   str(tmp_path / "nope.txt")])
        assert res.exit_code == 2


class TestEvalCommand:
    def test_table_over_bundled_corpus(self, runner):
        res = runner.invoke(main, ["eval", str(BUNDLED)])
        assert res.exit_code == 0
        lines = res.output.splitlines()
        assert lines[0].split() == ["item", "sent", "ok", "FN", "FP", "IM"]
        assert lines[-1] == "accuracy: 100.0%"
        total = lines[-2].split()
        assert total[0] == "total"
        assert total[1] == total[2]  # every sentence correct

    def test_table_shows_error_columns(self, runner):
        res = runner.invoke(main, ["eval", str(DATA / "eval-corpus")])
        assert res.exit_code == 0
        row = [l for l in res.output.splitlines()
               if l.startswith("miss-mix")][0]
        assert row.split() == ["miss-mix", "4", "1", "2", "1", "1"]
        assert res.output.splitlines()[-1] == "accuracy: 25.0%"

    def test_json_tally(self, runner):
        res = runner.invoke(main, ["eval", str(DATA / "eval-corpus"),
                                   "--json"])
        doc = json.loads(res.output)
        assert doc["sentences"] == 4
        assert doc["correct"] == 1
        assert doc["falseNegatives"] == 2
        assert doc["falsePositives"] == 1
        assert doc["intentionMismatches"] == 1
        assert doc["items"][0]["name"] == "miss-mix"

    def test_missing_corpus_exits_two(self, runner, tmp_path):
        res = runner.invoke(main, ["eval", str(tmp_path / "nope")])
        assert res.exit_code == 2
        assert "error:" in res.stderr

    def test_item_with_bad_gold_exits_two(self, runner, tmp_path):
        item = tmp_path / "corpus" / "broken"
        item.mkdir(parents=True)
        (item / "series.csv").write_text(
            "date,value\n2000-01-01,1\n2001-01-01,2\n")
        (item / "spec.json").write_text(json.dumps({
            "plotWidth": 100, "plotHeight": 100,
            "xRange": ["2000-01-01", "2001-01-01"], "yRange": [0, 3]}))
        (item / "caption.txt").write_text("Flat.\n")
        (item / "gold.json").write_text("{broken")
        res = runner.invoke(main, ["eval", str(tmp_path / "corpus")])
        assert res.exit_code == 2


class TestEntryPoint:
    def test_version_flag(self, runner):
        res = runner.invoke(main, ["--version"])
        assert res.exit_code == 0
        assert "version" in res.output

    def test_help_lists_subcommands(self, runner):
        res = runner.invoke(main, ["--help"])
        for name in ("features", "lint", "eval"):
            assert name in res.output
