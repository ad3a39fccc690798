"""Command-line driver.

Subcommands: build, stats, serve, export-queue, import-decisions.
Exit codes: 0 done, 2 pending human work in the queue, 1 error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import freqdict, quantstats
from .ingest import MODERN_EDITION, PROFILES, IngestError
from .lexicon import (LexiconFormatError, load_decisions, load_lexicon,
                      save_lexicon)
from .pipeline import RunConfig, run_build

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PENDING = 2


def _build_config(args) -> RunConfig:
    return RunConfig(
        manifest=args.manifest,
        lexicon=args.lexicon,
        out_dir=args.out,
        decisions=args.decisions,
        orthography_profile=args.profile,
        threshold_k=args.threshold_k,
        allow_pending=args.allow_pending,
        form_indices=args.form_indices,
        kwic_width=args.kwic_width,
    )


def cmd_build(args) -> int:
    result = run_build(_build_config(args), plot_data=args.plot_data)
    fd = result.fd
    print(f"N={fd.n_tokens} V_form={fd.v_form} V_lemma={fd.v_lemma} "
          f"pending={result.pending_count}")
    return EXIT_PENDING if result.pending_count else EXIT_OK


def cmd_export_queue(args) -> int:
    from .lemmatizer import write_queue_tsv
    result = run_build(_build_config(args))
    write_queue_tsv(result.queue, args.queue_out)
    print(f"{result.pending_count} items -> {args.queue_out}")
    return EXIT_PENDING if result.pending_count else EXIT_OK


def cmd_import_decisions(args) -> int:
    """Merge global decisions from a log into the lexicon file."""
    lexicon = load_lexicon(args.lexicon)
    decisions = load_decisions(args.decisions)
    applied = 0
    for d in decisions:
        lexicon.record_decision(d)
        if d.scope == "global":
            applied += 1
    out = args.lexicon_out or args.lexicon
    save_lexicon(lexicon, out)
    print(f"{applied} global decisions merged -> {out}")
    return EXIT_OK


def _stats_for_dir(list_dir: Path, out_dir: Path, suffix: str,
                   threshold_k: int):
    fd = freqdict.read_lists(list_dir / "lemmas_rank.tsv",
                             list_dir / "forms_rank.tsv")
    profile = quantstats.compute_profile(fd, threshold_k)
    from .pipeline import compute_fits
    fits = compute_fits(fd, profile)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = f"profile{suffix}.txt"
    (out_dir / name).write_text(
        "\n".join(quantstats.profile_lines(profile)) + "\n", encoding="utf-8")
    (out_dir / f"fits{suffix}.tsv").write_text(
        "\n".join(quantstats.fit_lines(fits)) + "\n", encoding="utf-8")
    return profile


def cmd_stats(args) -> int:
    out_dir = Path(args.out)
    profiles = []
    multiple = len(args.lists) > 1
    for list_dir in args.lists:
        list_dir = Path(list_dir)
        suffix = f"_{list_dir.name}" if multiple else ""
        profiles.append((list_dir.name,
                         _stats_for_dir(list_dir, out_dir, suffix,
                                        args.threshold_k)))
    if multiple:
        rows = ["metric\t" + "\t".join(name for name, _p in profiles)]
        metrics = ("n_tokens", "v_lemma", "v_form", "hapax_lemma",
                   "richness", "exclusivity", "concentration")
        for metric in metrics:
            values = []
            for _name, p in profiles:
                value = getattr(p, metric)
                values.append(f"{value:.6f}" if isinstance(value, float) else str(value))
            rows.append(metric + "\t" + "\t".join(values))
        (out_dir / "comparison.tsv").write_text("\n".join(rows) + "\n",
                                                encoding="utf-8")
    print(f"profiles written for {len(profiles)} corpora -> {out_dir}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    config = _build_config(args)
    app = create_app(config)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"serve failed: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _add_pipeline_args(sub, with_out: bool = True):
    sub.add_argument("--manifest", required=True, help="corpus manifest TSV")
    sub.add_argument("--lexicon", required=True, help="lexicon TSV")
    sub.add_argument("--decisions", default=None, help="decision log TSV")
    sub.add_argument("--out", required=with_out, default="out",
                     help="output directory")
    sub.add_argument("--profile", default=MODERN_EDITION, choices=PROFILES,
                     help="default orthography profile")
    sub.add_argument("--threshold-k", type=int, default=10, dest="threshold_k",
                     help="concentration threshold (freq >= K)")
    sub.add_argument("--allow-pending", action="store_true", dest="allow_pending")
    sub.add_argument("--form-indices", action="store_true", dest="form_indices",
                     help="compute indices over wordforms instead of lemmas")
    sub.add_argument("--kwic-width", type=int, default=5, dest="kwic_width",
                     help="KWIC context width in tokens per side")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqlex",
        description="Frequency dictionaries with human-controlled lemmatization")
    subs = parser.add_subparsers(dest="command", required=True)

    p_build = subs.add_parser("build", help="run the full pipeline")
    _add_pipeline_args(p_build)
    p_build.add_argument("--plot-data", action="store_true", dest="plot_data",
                         help="emit (log rank, log freq) pairs for plotting")
    p_build.set_defaults(func=cmd_build)

    p_stats = subs.add_parser("stats", help="profile + fits from exported lists")
    p_stats.add_argument("--lists", action="append", required=True,
                         help="directory with lemmas_rank.tsv/forms_rank.tsv "
                              "(repeat for comparison)")
    p_stats.add_argument("--out", required=True)
    p_stats.add_argument("--threshold-k", type=int, default=10,
                         dest="threshold_k")
    p_stats.set_defaults(func=cmd_stats)

    p_serve = subs.add_parser("serve", help="run the review service")
    _add_pipeline_args(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8713)
    p_serve.set_defaults(func=cmd_serve)

    p_queue = subs.add_parser("export-queue", help="write the ambiguity queue")
    _add_pipeline_args(p_queue)
    p_queue.add_argument("--queue-out", default="pending_queue.tsv",
                         dest="queue_out")
    p_queue.set_defaults(func=cmd_export_queue)

    p_imp = subs.add_parser("import-decisions",
                            help="merge global decisions into the lexicon")
    p_imp.add_argument("--lexicon", required=True)
    p_imp.add_argument("--decisions", required=True)
    p_imp.add_argument("--lexicon-out", default=None, dest="lexicon_out",
                       help="write merged lexicon here (default: in place)")
    p_imp.set_defaults(func=cmd_import_decisions)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IngestError, LexiconFormatError, freqdict.PendingTokensError,
            quantstats.FitError, ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
