"""Frequency dictionary: the three ordered lists.

1) lemmas by descending frequency, 2) wordforms by descending frequency,
3) lemmas alphabetical.  Counting is a commutative merge over documents;
ranking is a stable sort with codepoint tie-break so output is byte-stable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .lemmatizer import RES_PENDING, LemmatizedToken


class PendingTokensError(ValueError):
    def __init__(self, count: int):
        super().__init__(f"{count} tokens still pending human resolution")
        self.count = count


@dataclass(frozen=True)
class LemmaEntry:
    rank: int
    lemma: str
    pos: str
    disambiguator: str | None
    abs_freq: int
    rel_freq: float
    n_forms: int


@dataclass(frozen=True)
class FormEntry:
    rank: int
    form: str
    abs_freq: int
    rel_freq: float


@dataclass(frozen=True)
class FrequencyDictionary:
    n_tokens: int
    lemma_entries: tuple[LemmaEntry, ...]
    form_entries: tuple[FormEntry, ...]
    alpha_index: tuple[LemmaEntry, ...]  # permutation of lemma_entries

    @property
    def v_lemma(self) -> int:
        return len(self.lemma_entries)

    @property
    def v_form(self) -> int:
        return len(self.form_entries)


def count_forms(tokens, canonicalize=None) -> Counter:
    """Multiset counts over normalized (and variant-canonicalized) wordforms."""
    canonicalize = canonicalize or (lambda form: form)
    return Counter(canonicalize(token.norm) for token in tokens)


def count_lemmas(lemmatized: list[LemmatizedToken], canonicalize=None,
                 allow_pending: bool = False) -> dict:
    """Counts grouped by (lemma, pos, disambiguator) with distinct form sets.

    Pending tokens raise unless allow_pending, in which case they count under
    their own surface form with a "?" disambiguator (flagged unknowns).
    """
    canonicalize = canonicalize or (lambda form: form)
    pending = sum(1 for lt in lemmatized if lt.resolution == RES_PENDING)
    if pending and not allow_pending:
        raise PendingTokensError(pending)
    counts: dict[tuple, list] = {}
    for lt in lemmatized:
        if lt.resolution == RES_PENDING:
            key = (lt.form_key.upper(), "other", "?")
        else:
            key = (lt.lemma, lt.pos, lt.chosen.disambiguator)
        slot = counts.setdefault(key, [0, set()])
        slot[0] += 1
        slot[1].add(canonicalize(lt.token.norm))
    return {key: (freq, forms) for key, (freq, forms) in counts.items()}


def assign_ranks(freq_map, headword=None) -> list[tuple[int, object, int]]:
    """Rank by descending frequency; ties break by codepoint order of headword."""
    headword = headword or (lambda key: key)
    ordered = sorted(freq_map.items(), key=lambda kv: (-kv[1], headword(kv[0])))
    return [(rank, key, freq) for rank, (key, freq) in enumerate(ordered, 1)]


def build_dictionary(tokens, lemmatized, canonicalize=None,
                     allow_pending: bool = False) -> FrequencyDictionary:
    n = len(tokens)
    form_counts = count_forms(tokens, canonicalize)
    lemma_counts = count_lemmas(lemmatized, canonicalize, allow_pending)

    form_entries = tuple(
        FormEntry(rank=rank, form=form, abs_freq=freq,
                  rel_freq=freq / n if n else 0.0)
        for rank, form, freq in assign_ranks(form_counts))

    lemma_freqs = {key: freq for key, (freq, _forms) in lemma_counts.items()}
    lemma_entries = tuple(
        LemmaEntry(rank=rank, lemma=key[0], pos=key[1], disambiguator=key[2],
                   abs_freq=freq, rel_freq=freq / n if n else 0.0,
                   n_forms=len(lemma_counts[key][1]))
        for rank, key, freq in assign_ranks(
            lemma_freqs, headword=lambda k: (k[0], k[1], k[2] or "")))

    alpha_index = tuple(sorted(
        lemma_entries, key=lambda e: (e.lemma, e.pos, e.disambiguator or "")))

    return FrequencyDictionary(n_tokens=n, lemma_entries=lemma_entries,
                               form_entries=form_entries, alpha_index=alpha_index)


def _fmt_rel(value: float) -> str:
    return f"{value:.6f}"


def write_lemma_rank_tsv(fd: FrequencyDictionary, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rank\tlemma\tpos\tdisambiguator\tabs_freq\trel_freq\tn_forms\n")
        for e in fd.lemma_entries:
            fh.write(f"{e.rank}\t{e.lemma}\t{e.pos}\t{e.disambiguator or ''}\t"
                     f"{e.abs_freq}\t{_fmt_rel(e.rel_freq)}\t{e.n_forms}\n")


def write_form_rank_tsv(fd: FrequencyDictionary, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rank\tform\tabs_freq\trel_freq\n")
        for e in fd.form_entries:
            fh.write(f"{e.rank}\t{e.form}\t{e.abs_freq}\t{_fmt_rel(e.rel_freq)}\n")


def write_alpha_tsv(fd: FrequencyDictionary, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("lemma\tpos\tdisambiguator\tabs_freq\trel_freq\trank\n")
        for e in fd.alpha_index:
            fh.write(f"{e.lemma}\t{e.pos}\t{e.disambiguator or ''}\t"
                     f"{e.abs_freq}\t{_fmt_rel(e.rel_freq)}\t{e.rank}\n")


def read_lists(lemma_rank_path, form_rank_path) -> FrequencyDictionary:
    """Rebuild a FrequencyDictionary from exported rank lists (for `stats`)."""
    lemma_entries = []
    with open(lemma_rank_path, encoding="utf-8") as fh:
        next(fh)
        for line in fh:
            rank, lemma, pos, disamb, abs_freq, rel, n_forms = line.rstrip("\n").split("\t")
            lemma_entries.append(LemmaEntry(int(rank), lemma, pos, disamb or None,
                                            int(abs_freq), float(rel), int(n_forms)))
    form_entries = []
    with open(form_rank_path, encoding="utf-8") as fh:
        next(fh)
        for line in fh:
            rank, form, abs_freq, rel = line.rstrip("\n").split("\t")
            form_entries.append(FormEntry(int(rank), form, int(abs_freq), float(rel)))
    n = sum(e.abs_freq for e in lemma_entries)
    alpha = tuple(sorted(lemma_entries,
                         key=lambda e: (e.lemma, e.pos, e.disambiguator or "")))
    return FrequencyDictionary(n_tokens=n, lemma_entries=tuple(lemma_entries),
                               form_entries=tuple(form_entries), alpha_index=alpha)
