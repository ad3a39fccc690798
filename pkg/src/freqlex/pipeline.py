"""End-to-end build: ingest -> tokenize -> lemmatize -> lists -> stats.

Artifacts are written with stable sorts and fixed decimal formatting so a
rebuild from identical inputs is byte-identical.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from . import freqdict, ingest, lemmatizer, quantstats, tokenizer
from .lexicon import Decision, Lexicon, load_decisions, load_lexicon


@dataclass
class RunConfig:
    manifest: Path
    lexicon: Path
    out_dir: Path
    decisions: Path | None = None
    orthography_profile: str = ingest.MODERN_EDITION
    threshold_k: int = 10
    allow_pending: bool = False
    form_indices: bool = False
    kwic_width: int = lemmatizer.DEFAULT_KWIC_WIDTH
    note_open: str = ingest.NOTE_OPEN
    note_close: str = ingest.NOTE_CLOSE

    def __post_init__(self):
        self.manifest = Path(self.manifest)
        self.lexicon = Path(self.lexicon)
        self.out_dir = Path(self.out_dir)
        if self.decisions is not None:
            self.decisions = Path(self.decisions)


@dataclass
class BuildResult:
    tokens: list
    lemmatized: list
    queue: list
    fd: freqdict.FrequencyDictionary
    profile: quantstats.StatProfile | None
    fits: list
    lexicon: Lexicon
    decisions: list[Decision] = field(default_factory=list)

    @property
    def pending_count(self) -> int:
        return len(self.queue)


def load_corpus_tokens(config: RunConfig, lexicon: Lexicon):
    docs = ingest.load_manifest(config.manifest, config.orthography_profile)
    accent_keep = lexicon.accent_keep()
    tokens = []
    for doc in docs:
        clean = ingest.clean_document(doc, config.note_open, config.note_close)
        tokens.extend(tokenizer.tokenize(clean, accent_keep))
    return tokens


def compute_fits(fd: freqdict.FrequencyDictionary,
                 profile: quantstats.StatProfile | None) -> list:
    """Rank-frequency and length-relation fits; degenerate inputs are recorded
    as skips rather than aborting the build."""
    fits = []
    points = [(e.rank, e.abs_freq) for e in fd.lemma_entries]
    try:
        fits.append(quantstats.fit_zipf(points))
    except quantstats.FitError as exc:
        fits.append((quantstats.MODEL_ZIPF, str(exc)))
    try:
        fits.append(quantstats.fit_zipf_mandelbrot(points))
    except quantstats.FitError as exc:
        fits.append((quantstats.MODEL_ZIPF_MANDELBROT, str(exc)))
    if profile is not None:
        try:
            pts, wts = quantstats.menzerath_points(profile.mean_constituent,
                                                   profile.length_dist)
            fits.append(quantstats.fit_menzerath(pts, wts))
        except quantstats.FitError as exc:
            fits.append((quantstats.MODEL_MENZERATH, str(exc)))
    return fits


def run_pipeline(config: RunConfig) -> BuildResult:
    lexicon = load_lexicon(config.lexicon)
    decisions = []
    if config.decisions and Path(config.decisions).is_file():
        decisions = load_decisions(config.decisions)
    tokens = load_corpus_tokens(config, lexicon)
    for d in decisions:
        lexicon.record_decision(d)
    lemmatized, queue = lemmatizer.lemmatize_stream(tokens, lexicon,
                                                    config.kwic_width)
    if decisions:
        lemmatized = lemmatizer.apply_decisions(lemmatized, decisions)
        still_pending = {(lt.token.doc_id, lt.token.char_offset)
                         for lt in lemmatized
                         if lt.resolution == lemmatizer.RES_PENDING}
        queue = [item for item in queue
                 if (item.doc_id, item.char_offset) in still_pending]

    # pending tokens are counted under their surface form (flagged "?") so the
    # lists are always complete; the exit-code protocol signals pending work
    fd = freqdict.build_dictionary(tokens, lemmatized,
                                   canonicalize=lexicon.key_for,
                                   allow_pending=True)
    profile = None
    fits = []
    if fd.n_tokens:
        profile = quantstats.compute_profile(fd, config.threshold_k,
                                             use_forms=config.form_indices,
                                             tokens=tokens)
        fits = compute_fits(fd, profile)
    return BuildResult(tokens=tokens, lemmatized=lemmatized, queue=queue,
                       fd=fd, profile=profile, fits=fits, lexicon=lexicon,
                       decisions=decisions)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_artifacts(result: BuildResult, config: RunConfig,
                    plot_data: bool = False) -> dict[str, Path]:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "lemmas_rank": out / "lemmas_rank.tsv",
        "forms_rank": out / "forms_rank.tsv",
        "lemmas_alpha": out / "lemmas_alpha.tsv",
        "tokens": out / "tokens.tsv",
        "queue": out / "pending_queue.tsv",
        "fits": out / "fits.tsv",
        "profile": out / "profile.txt",
    }
    freqdict.write_lemma_rank_tsv(result.fd, paths["lemmas_rank"])
    freqdict.write_form_rank_tsv(result.fd, paths["forms_rank"])
    freqdict.write_alpha_tsv(result.fd, paths["lemmas_alpha"])
    tokenizer.write_tokens_tsv(result.tokens, paths["tokens"])
    lemmatizer.write_queue_tsv(result.queue, paths["queue"])
    fits_text = "\n".join(quantstats.fit_lines(result.fits)) + "\n"
    paths["fits"].write_text(fits_text, encoding="utf-8")

    script_counts = tokenizer.count_script_classes(result.tokens)
    extra = {f"tokens_{script}": count for script, count in script_counts.items()}
    extra["pending"] = result.pending_count
    for name in ("lemmas_rank", "forms_rank", "lemmas_alpha"):
        extra[f"digest_{name}"] = f"sha256:{_sha256(paths[name])}"
    if result.profile is not None:
        lines = quantstats.profile_lines(result.profile, extra)
    else:
        lines = ["# empty corpus"] + [f"{k}\t{v}" for k, v in extra.items()]
    paths["profile"].write_text("\n".join(lines) + "\n", encoding="utf-8")

    if plot_data:
        paths["loglog"] = out / "loglog_points.tsv"
        with open(paths["loglog"], "w", encoding="utf-8") as fh:
            fh.write("log_rank\tlog_freq\n")
            import math
            for e in result.fd.lemma_entries:
                fh.write(f"{math.log(e.rank):.10g}\t{math.log(e.abs_freq):.10g}\n")
    return paths


def run_build(config: RunConfig, plot_data: bool = False) -> BuildResult:
    result = run_pipeline(config)
    write_artifacts(result, config, plot_data=plot_data)
    return result
