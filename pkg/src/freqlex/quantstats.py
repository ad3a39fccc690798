"""Lexical statistics and model fitting.

Vocabulary indices (richness, exclusivity, concentration), text coverage,
syllable/phoneme length distributions, and least-squares fits of the
rank-frequency power laws plus the word-length / syllable-length relation.

Syllable counts are the vowel-letter count; a deliberate approximation,
flagged as such in exports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .freqdict import FrequencyDictionary
from .tokenizer import SCRIPT_CYRILLIC, classify_script, strip_combining

UKR_VOWELS = frozenset("аеиіоуяюєї")

COVERAGE_CUTOFFS = (10, 100, 500, 1000, 5000)

MODEL_ZIPF = "zipf"
MODEL_ZIPF_MANDELBROT = "zipf_mandelbrot"
MODEL_MENZERATH = "menzerath"


class FitError(ValueError):
    """Degenerate input for a model fit."""


class FitConvergenceError(FitError):
    """Iteration cap hit; carries the best fit found so far."""

    def __init__(self, message: str, best: "FitResult"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class FitResult:
    model: str
    params: dict[str, float]
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class StatProfile:
    n_tokens: int
    v_lemma: int
    v_form: int
    hapax_lemma: int
    high_freq_count: int  # lemmas with abs_freq >= K
    richness: float       # V / N
    exclusivity: float    # hapax / N
    concentration: float  # high_freq_count / N
    coverage: tuple[tuple[int, float], ...]  # (rank cutoff, cumulative rel freq)
    length_dist: dict[int, int]        # syllable count -> token count
    phoneme_dist: dict[int, int]       # phoneme count -> token count
    mean_constituent: dict[int, float]  # word length in syllables -> mean syllable length in phonemes
    threshold_k: int


def count_syllables(form: str) -> int:
    """Vowel-letter count; zero-vowel forms (з, в) report 0."""
    return sum(1 for ch in form.lower() if ch in UKR_VOWELS)


def estimate_phonemes(form: str) -> int:
    """Letter count adjusted by a fixed rule table.

    ь, apostrophe and hyphen count 0; щ counts 2; дз/дж count 1; ї always 2;
    я/ю/є count 2 word-initially, after a vowel, apostrophe or ь, else 1.
    """
    s = strip_combining(form.lower())
    total = 0
    prev = ""
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "ь'’ʼ-":
            prev = ch
            i += 1
            continue
        if ch == "щ":
            total += 2
        elif ch == "д" and i + 1 < len(s) and s[i + 1] in "зж":
            total += 1
            prev = s[i + 1]
            i += 2
            continue
        elif ch == "ї":
            total += 2
        elif ch in "яює":
            if prev == "" or prev in UKR_VOWELS or prev in "ь'":
                total += 2
            else:
                total += 1
        else:
            total += 1
        prev = ch
        i += 1
    return total


def length_distributions(tokens) -> tuple[dict[int, int], dict[int, int], dict[int, float]]:
    """Token-weighted histograms over Cyrillic tokens, plus the mean
    phonemes-per-syllable table keyed by word length in syllables (x=0 excluded)."""
    syl_hist: dict[int, int] = {}
    pho_hist: dict[int, int] = {}
    ratio_sum: dict[int, float] = {}
    ratio_n: dict[int, int] = {}
    for token in tokens:
        if token.script != SCRIPT_CYRILLIC:
            continue
        syl = count_syllables(token.norm)
        pho = estimate_phonemes(token.norm)
        syl_hist[syl] = syl_hist.get(syl, 0) + 1
        pho_hist[pho] = pho_hist.get(pho, 0) + 1
        if syl > 0:
            ratio_sum[syl] = ratio_sum.get(syl, 0.0) + pho / syl
            ratio_n[syl] = ratio_n.get(syl, 0) + 1
    mean_constituent = {x: ratio_sum[x] / ratio_n[x] for x in sorted(ratio_sum)}
    return (dict(sorted(syl_hist.items())), dict(sorted(pho_hist.items())),
            mean_constituent)


class _FormsAsTokens:
    """Adapter so length distributions work from an exported form list."""

    def __init__(self, form: str, script: str):
        self.norm = form
        self.script = script


def _length_stats_from_forms(form_entries):
    pseudo = []
    for entry in form_entries:
        script = classify_script(entry.form)
        pseudo.extend([_FormsAsTokens(entry.form, script)] * entry.abs_freq)
    return length_distributions(pseudo)


def coverage_at(fd: FrequencyDictionary, cutoff: int) -> float:
    """Cumulative relative frequency of the top-`cutoff` ranked lemmas."""
    if not 1 <= cutoff <= fd.v_lemma:
        raise ValueError(f"cutoff {cutoff} out of range 1..{fd.v_lemma}")
    covered = sum(e.abs_freq for e in fd.lemma_entries[:cutoff])
    return covered / fd.n_tokens


def compute_profile(fd: FrequencyDictionary, threshold_k: int = 10,
                    use_forms: bool = False, tokens=None) -> StatProfile:
    """Vocabulary indices over the lemma list (or form list with use_forms),
    denominators are N per the standard definitions."""
    n = fd.n_tokens
    if n == 0:
        raise ValueError("empty corpus")
    if use_forms:
        freqs = [e.abs_freq for e in fd.form_entries]
        vocab = fd.v_form
    else:
        freqs = [e.abs_freq for e in fd.lemma_entries]
        vocab = fd.v_lemma
    hapax = sum(1 for f in freqs if f == 1)
    high = sum(1 for f in freqs if f >= threshold_k)
    cutoffs = sorted({c for c in COVERAGE_CUTOFFS if c < fd.v_lemma} | {fd.v_lemma})
    coverage = tuple((c, coverage_at(fd, c)) for c in cutoffs)
    if tokens is not None:
        syl_hist, pho_hist, mean_con = length_distributions(tokens)
    else:
        syl_hist, pho_hist, mean_con = _length_stats_from_forms(fd.form_entries)
    return StatProfile(
        n_tokens=n, v_lemma=fd.v_lemma, v_form=fd.v_form,
        hapax_lemma=hapax, high_freq_count=high,
        richness=vocab / n, exclusivity=hapax / n, concentration=high / n,
        coverage=coverage, length_dist=syl_hist, phoneme_dist=pho_hist,
        mean_constituent=mean_con, threshold_k=threshold_k,
    )


def _loglog_regression(log_x: np.ndarray, log_y: np.ndarray):
    slope, intercept = np.polyfit(log_x, log_y, 1)
    fitted = slope * log_x + intercept
    ss_res = float(np.sum((log_y - fitted) ** 2))
    ss_tot = float(np.sum((log_y - log_y.mean()) ** 2))
    r2 = 0.0 if ss_tot == 0.0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return float(slope), float(intercept), ss_res, r2


def _check_rank_freq(points, minimum: int):
    pts = [(float(r), float(f)) for r, f in points]
    if len(pts) < minimum:
        raise FitError(f"need at least {minimum} rank-frequency points")
    ranks = np.array([r for r, _ in pts])
    freqs = np.array([f for _, f in pts])
    if np.any(ranks <= 0) or np.any(freqs <= 0):
        raise FitError("ranks and frequencies must be positive")
    if len(set(ranks.tolist())) != len(ranks):
        raise FitError("degenerate input: duplicate ranks")
    return ranks, freqs


def fit_zipf(points) -> FitResult:
    """Least squares in (log rank, log freq): f(r) = C * r^-a."""
    ranks, freqs = _check_rank_freq(points, 2)
    slope, intercept, _ss_res, r2 = _loglog_regression(np.log(ranks), np.log(freqs))
    a = -slope
    if a == 0.0:
        a = 0.0  # normalize -0.0 from flat data
    return FitResult(model=MODEL_ZIPF,
                     params={"C": math.exp(intercept), "a": a},
                     r_squared=r2, n_points=len(ranks))


def fit_zipf_mandelbrot(points, b: float | None = None, tol: float = 1e-7,
                        max_iter: int = 300) -> FitResult:
    """f(r) = C * (r + b)^-a via nested optimization: golden-section search on
    b >= 0 with a closed-form log-log regression inside."""
    ranks, freqs = _check_rank_freq(points, 4)
    log_f = np.log(freqs)

    def evaluate(b_val: float):
        slope, intercept, ss_res, r2 = _loglog_regression(
            np.log(ranks + b_val), log_f)
        return ss_res, FitResult(
            model=MODEL_ZIPF_MANDELBROT,
            params={"C": math.exp(intercept), "a": -slope, "b": b_val},
            r_squared=r2, n_points=len(ranks))

    if b is not None:
        if b < 0:
            raise FitError("rank shift b must be >= 0")
        return evaluate(b)[1]

    lo, hi = 0.0, float(ranks.max())
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    threshold = tol * max(hi, 1.0)

    best_rss, best = evaluate(0.0)

    def probe(b_val: float):
        nonlocal best_rss, best
        rss, result = evaluate(b_val)
        if rss < best_rss:
            best_rss, best = rss, result
        return rss

    x1 = hi - phi * (hi - lo)
    x2 = lo + phi * (hi - lo)
    f1 = probe(x1)
    f2 = probe(x2)
    for _ in range(max_iter):
        if hi - lo <= threshold:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = probe(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = probe(x2)
    else:
        raise FitConvergenceError(
            f"no convergence after {max_iter} iterations", best)
    probe((lo + hi) / 2.0)
    return best


def _weighted_lls(design: np.ndarray, target: np.ndarray, weights: np.ndarray):
    w = np.sqrt(weights)
    coef, *_ = np.linalg.lstsq(design * w[:, None], target * w, rcond=None)
    fitted = design @ coef
    ss_res = float(np.sum(weights * (target - fitted) ** 2))
    mean_w = float(np.sum(weights * target) / np.sum(weights))
    ss_tot = float(np.sum(weights * (target - mean_w) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-12 else 0.0
    else:
        r2 = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return coef, r2


def _adjusted_r2(r2: float, n: int, n_params: int) -> float:
    if n - n_params - 1 <= 0:
        return r2
    return 1.0 - (1.0 - r2) * (n - 1) / (n - n_params - 1)


def fit_menzerath(points, weights=None) -> FitResult:
    """Fit y = A * x^b * exp(-c*x) by regression of ln y on (ln x, x).

    Points are (word length in syllables, mean syllable length in phonemes),
    weighted by token count at each length.  The reduced form (c = 0) is also
    fitted; the model with the better adjusted r-squared wins, ties go to the
    reduced form.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if any(y <= 0 for _x, y in pts):
        raise FitError("mean constituent lengths must be positive")
    if any(x <= 0 for x, _y in pts):
        raise FitError("word lengths must be positive")
    if len({x for x, _y in pts}) < 3:
        raise FitError("need at least 3 distinct word lengths")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
    ln_x = np.log(x)
    ln_y = np.log(y)

    design_full = np.column_stack([np.ones_like(x), ln_x, x])
    coef_full, r2_full = _weighted_lls(design_full, ln_y, w)
    design_red = np.column_stack([np.ones_like(x), ln_x])
    coef_red, r2_red = _weighted_lls(design_red, ln_y, w)

    n = len(pts)
    if _adjusted_r2(r2_full, n, 2) > _adjusted_r2(r2_red, n, 1) + 1e-12:
        params = {"A": math.exp(float(coef_full[0])), "b": float(coef_full[1]),
                  "c": -float(coef_full[2])}
        r2 = r2_full
    else:
        params = {"A": math.exp(float(coef_red[0])), "b": float(coef_red[1]),
                  "c": 0.0}
        r2 = r2_red
    return FitResult(model=MODEL_MENZERATH, params=params, r_squared=r2,
                     n_points=n)


def menzerath_points(mean_constituent: dict[int, float],
                     length_dist: dict[int, int]):
    """(x, y, weight) triples for fit_menzerath from profile tables."""
    pts = [(x, y) for x, y in mean_constituent.items()]
    wts = [length_dist.get(x, 1) for x, _y in pts]
    return pts, wts


def profile_lines(profile: StatProfile, extra: dict | None = None) -> list[str]:
    """Structured key/value export of a StatProfile."""
    lines = [
        "# lexical profile; syllable counts are vowel-letter counts (approximation)",
        f"n_tokens\t{profile.n_tokens}",
        f"v_lemma\t{profile.v_lemma}",
        f"v_form\t{profile.v_form}",
        f"hapax_lemma\t{profile.hapax_lemma}",
        f"high_freq_count_k{profile.threshold_k}\t{profile.high_freq_count}",
        f"richness\t{profile.richness:.6f}",
        f"exclusivity\t{profile.exclusivity:.6f}",
        f"concentration\t{profile.concentration:.6f}",
        # V-denominator variants for cross-study comparison
        f"exclusivity_over_v\t{profile.hapax_lemma / profile.v_lemma:.6f}",
        f"concentration_over_v\t{profile.high_freq_count / profile.v_lemma:.6f}",
    ]
    for cutoff, value in profile.coverage:
        lines.append(f"coverage_{cutoff}\t{value:.6f}")
    for x, count in profile.length_dist.items():
        lines.append(f"syllable_dist_{x}\t{count}")
    for x, count in profile.phoneme_dist.items():
        lines.append(f"phoneme_dist_{x}\t{count}")
    for x, mean in profile.mean_constituent.items():
        lines.append(f"mean_syllable_phonemes_{x}\t{mean:.6f}")
    for key, value in (extra or {}).items():
        lines.append(f"{key}\t{value}")
    return lines


def fit_lines(fits: list) -> list[str]:
    """TSV export: model, params, r-squared, n."""
    lines = ["model\tparams\tr_squared\tn_points"]
    for fit in fits:
        if isinstance(fit, FitResult):
            params = ";".join(f"{k}={v:.10g}" for k, v in fit.params.items())
            lines.append(f"{fit.model}\t{params}\t{fit.r_squared:.6f}\t{fit.n_points}")
        else:  # (model_name, error_message)
            model, message = fit
            lines.append(f"{model}\tskipped: {message}\t\t")
    return lines
