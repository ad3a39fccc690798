from pathlib import Path

from freqlex import cli
from freqlex.lexicon import (Candidate, Decision, append_decision,
                             load_lexicon, now_timestamp)

from conftest import MINICORPUS


def build_args(out, extra=()):
    return ["build",
            "--manifest", str(MINICORPUS / "manifest.tsv"),
            "--lexicon", str(MINICORPUS / "lexicon.tsv"),
            "--out", str(out), *extra]


def test_build_exits_zero_when_resolved(tmp_path, capsys):
    code = cli.main(build_args(tmp_path / "out"))
    assert code == cli.EXIT_OK
    line = capsys.readouterr().out.strip()
    assert line.startswith("N=") and "pending=0" in line
    for name in ("lemmas_rank.tsv", "forms_rank.tsv", "lemmas_alpha.tsv",
                 "tokens.tsv", "pending_queue.tsv", "fits.tsv", "profile.txt"):
        assert (tmp_path / "out" / name).is_file()


def test_missing_manifest_exits_one(tmp_path, capsys):
    code = cli.main(["build", "--manifest", str(tmp_path / "nope.tsv"),
                     "--lexicon", str(MINICORPUS / "lexicon.tsv"),
                     "--out", str(tmp_path / "out")])
    assert code == cli.EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_plot_data_flag_writes_loglog_points(tmp_path):
    cli.main(build_args(tmp_path / "out", ["--plot-data"]))
    lines = (tmp_path / "out" / "loglog_points.tsv").read_text().splitlines()
    assert lines[0] == "log_rank\tlog_freq"
    assert float(lines[1].split("\t")[0]) == 0.0  # log rank 1


def incomplete_corpus(tmp_path):
    """Corpus with one form the lexicon cannot resolve."""
    (tmp_path / "doc.txt").write_text("хата хата загадка", encoding="utf-8")
    manifest = tmp_path / "manifest.tsv"
    manifest.write_text("d1\tdoc.txt\n", encoding="utf-8")
    lexicon = tmp_path / "lexicon.tsv"
    lexicon.write_text("хата\tХАТА\tnoun\t\t\t0\n", encoding="utf-8")
    return manifest, lexicon


def test_pending_forms_exit_two(tmp_path, capsys):
    manifest, lexicon = incomplete_corpus(tmp_path)
    code = cli.main(["build", "--manifest", str(manifest),
                     "--lexicon", str(lexicon), "--out", str(tmp_path / "out")])
    assert code == cli.EXIT_PENDING
    assert "pending=1" in capsys.readouterr().out


def test_export_queue(tmp_path):
    manifest, lexicon = incomplete_corpus(tmp_path)
    queue_path = tmp_path / "queue.tsv"
    code = cli.main(["export-queue", "--manifest", str(manifest),
                     "--lexicon", str(lexicon), "--out", str(tmp_path / "out"),
                     "--queue-out", str(queue_path)])
    assert code == cli.EXIT_PENDING
    lines = queue_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2  # header + one pending item
    assert "загадка" in lines[1]


def test_import_decisions_then_rebuild_exits_zero(tmp_path):
    manifest, lexicon = incomplete_corpus(tmp_path)
    log = tmp_path / "decisions.tsv"
    append_decision(log, Decision(
        "загадка", "global", Candidate("ЗАГАДКА", "noun"),
        "ann", now_timestamp()))
    merged = tmp_path / "merged.tsv"
    code = cli.main(["import-decisions", "--lexicon", str(lexicon),
                     "--decisions", str(log), "--lexicon-out", str(merged)])
    assert code == cli.EXIT_OK
    assert load_lexicon(merged).top_decided("загадка").lemma == "ЗАГАДКА"
    code = cli.main(["build", "--manifest", str(manifest),
                     "--lexicon", str(merged), "--out", str(tmp_path / "out")])
    assert code == cli.EXIT_OK


def test_build_with_decision_log_resolves_inline(tmp_path):
    manifest, lexicon = incomplete_corpus(tmp_path)
    log = tmp_path / "decisions.tsv"
    append_decision(log, Decision(
        "загадка", "global", Candidate("ЗАГАДКА", "noun"),
        "ann", now_timestamp()))
    code = cli.main(["build", "--manifest", str(manifest),
                     "--lexicon", str(lexicon), "--decisions", str(log),
                     "--out", str(tmp_path / "out")])
    assert code == cli.EXIT_OK


def test_stats_from_exported_lists(tmp_path, capsys):
    cli.main(build_args(tmp_path / "out"))
    code = cli.main(["stats", "--lists", str(tmp_path / "out"),
                     "--out", str(tmp_path / "stats")])
    assert code == cli.EXIT_OK
    profile = (tmp_path / "stats" / "profile.txt").read_text(encoding="utf-8")
    assert "richness\t" in profile
    assert (tmp_path / "stats" / "fits.tsv").is_file()


def test_stats_comparison_of_two_corpora(tmp_path):
    cli.main(build_args(tmp_path / "a"))
    cli.main(build_args(tmp_path / "b"))
    code = cli.main(["stats", "--lists", str(tmp_path / "a"),
                     "--lists", str(tmp_path / "b"),
                     "--out", str(tmp_path / "stats")])
    assert code == cli.EXIT_OK
    rows = (tmp_path / "stats" / "comparison.tsv").read_text().splitlines()
    assert rows[0] == "metric\ta\tb"
    n_row = next(r for r in rows if r.startswith("n_tokens"))
    _, a_val, b_val = n_row.split("\t")
    assert a_val == b_val  # same corpus twice


def test_determinism_byte_identical_builds(tmp_path):
    cli.main(build_args(tmp_path / "a"))
    cli.main(build_args(tmp_path / "b"))
    names = [p.name for p in sorted((tmp_path / "a").iterdir())]
    assert names
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == \
            (tmp_path / "b" / name).read_bytes(), name
