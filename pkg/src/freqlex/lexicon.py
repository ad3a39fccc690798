"""Persistent lexicon: wordform -> lemma candidates, variant-merge tables and
recorded human decisions.

The lexicon is the single source of truth the lemmatizer consults.  It is a
hand-editable TSV (form_key, lemma, pos, disambiguator, language, priority);
decisions live in an append-only TSV log.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .tokenizer import normalize_apostrophes

POS_VALUES = (
    "noun", "noun_pl_tantum", "adjective", "pronoun", "numeral", "verb",
    "participle", "adverb", "preposition", "conjunction", "particle",
    "interjection", "abbreviation", "foreign", "other",
)

# Independent (content) parts of speech; these shed hyphen enclitics.
CONTENT_POS = frozenset({
    "noun", "noun_pl_tantum", "adjective", "pronoun", "numeral", "verb",
    "participle", "adverb",
})

SCOPE_GLOBAL = "global"
SCOPE_OCCURRENCE = "occurrence"


class LexiconFormatError(ValueError):
    """Malformed lexicon or decision-log line."""


@dataclass(frozen=True)
class Candidate:
    lemma: str
    pos: str
    disambiguator: str | None = None
    language: str | None = None

    def __post_init__(self):
        if self.pos not in POS_VALUES:
            raise ValueError(f"unknown POS {self.pos!r} for lemma {self.lemma!r}")
        if self.pos == "foreign" and not self.language:
            raise ValueError(f"foreign lemma {self.lemma!r} needs a language code")

    def label(self) -> str:
        """Display form, homographs shown as LEMMA (disambiguator)."""
        if self.disambiguator:
            return f"{self.lemma} ({self.disambiguator})"
        return self.lemma


@dataclass(frozen=True)
class LexiconEntry:
    form_key: str
    candidates: tuple[Candidate, ...]


@dataclass(frozen=True)
class VariantGroup:
    head: str
    members: frozenset[str]
    kind: str  # euphonic | orthographic

    def __post_init__(self):
        if self.head not in self.members:
            raise ValueError(f"variant head {self.head!r} not among members")


@dataclass(frozen=True)
class Decision:
    form_key: str
    scope: str
    chosen: Candidate
    annotator: str
    timestamp: str
    occurrence: tuple[str, int] | None = None

    def __post_init__(self):
        if self.scope not in (SCOPE_GLOBAL, SCOPE_OCCURRENCE):
            raise ValueError(f"unknown decision scope {self.scope!r}")
        if (self.occurrence is not None) != (self.scope == SCOPE_OCCURRENCE):
            raise ValueError("occurrence reference present iff scope=occurrence")


def now_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# Euphonic and orthographic merges.  Deliberate speech-characterization
# spellings (адукат, переграф, казета) are never grouped.
DEFAULT_VARIANT_GROUPS = (
    VariantGroup("ся", frozenset({"ся", "сь"}), "euphonic"),
    VariantGroup("б", frozenset({"б", "би"}), "euphonic"),
    VariantGroup("ж", frozenset({"ж", "же"}), "euphonic"),
    VariantGroup("у", frozenset({"у", "в"}), "euphonic"),
    VariantGroup("і", frozenset({"і", "й"}), "euphonic"),
    VariantGroup("з", frozenset({"з", "із", "зі", "зо"}), "euphonic"),
    VariantGroup("під", frozenset({"під", "підо"}), "euphonic"),
    VariantGroup("весь", frozenset({"весь", "увесь", "ввесь"}), "euphonic"),
    VariantGroup("всякий", frozenset({"всякий", "усякий"}), "euphonic"),
    VariantGroup("щоб", frozenset({"щоб", "щоби"}), "euphonic"),
    VariantGroup("тільки", frozenset({"тільки", "тілько"}), "orthographic"),
    VariantGroup("скільки", frozenset({"скільки", "скілько"}), "orthographic"),
    VariantGroup("ледве", frozenset({"ледве", "ледво"}), "orthographic"),
    VariantGroup("трохи", frozenset({"трохи", "троха"}), "orthographic"),
)


class VariantTable:
    """Disjoint variant groups; canonicalize maps members to their head."""

    def __init__(self, groups=DEFAULT_VARIANT_GROUPS):
        self.groups = tuple(groups)
        self._map: dict[str, str] = {}
        for group in self.groups:
            for member in group.members:
                if member in self._map and self._map[member] != group.head:
                    raise ValueError(f"variant form {member!r} in two groups")
                self._map[member] = group.head

    def canonicalize(self, form: str) -> str:
        return self._map.get(form, form)


def _norm_key(form: str) -> str:
    return normalize_apostrophes(form.lower())


class Lexicon:
    """Mutable candidate store keyed by canonicalized wordform."""

    def __init__(self, variants: VariantTable | None = None):
        self.variants = variants or VariantTable()
        # form_key -> list of [Candidate, priority]; lookup order is
        # priority-descending, insertion-stable.
        self._entries: dict[str, list[list]] = {}
        self.decisions: list[Decision] = []

    def key_for(self, form: str) -> str:
        return self.variants.canonicalize(_norm_key(form))

    def add(self, form_key: str, candidate: Candidate, priority: int = 0) -> None:
        key = self.key_for(form_key)
        rows = self._entries.setdefault(key, [])
        for row in rows:
            if row[0] == candidate:
                row[1] = max(row[1], priority)
                return
        rows.append([candidate, priority])

    def lookup(self, form: str) -> list[Candidate]:
        rows = self._entries.get(self.key_for(form), [])
        order = sorted(range(len(rows)), key=lambda i: (-rows[i][1], i))
        return [rows[i][0] for i in order]

    def entry(self, form: str) -> LexiconEntry | None:
        key = self.key_for(form)
        if key not in self._entries:
            return None
        return LexiconEntry(form_key=key, candidates=tuple(self.lookup(key)))

    def top_decided(self, form: str):
        """The candidate a past global decision promoted, if it is the unique
        highest-priority one."""
        rows = self._entries.get(self.key_for(form), [])
        if not rows:
            return None
        best = max(prio for _cand, prio in rows)
        if best <= 0:
            return None
        winners = [cand for cand, prio in rows if prio == best]
        return winners[0] if len(winners) == 1 else None

    def record_decision(self, decision: Decision) -> None:
        """Log a decision; global decisions promote the chosen candidate so
        future lookups resolve automatically."""
        self.decisions.append(decision)
        if decision.scope != SCOPE_GLOBAL:
            return
        key = self.key_for(decision.form_key)
        rows = self._entries.setdefault(key, [])
        if self.top_decided(key) == decision.chosen:
            return  # idempotent re-recording
        best = max((prio for _c, prio in rows), default=0)
        for row in rows:
            if row[0] == decision.chosen:
                row[1] = best + 1
                return
        rows.append([decision.chosen, best + 1])

    def forms(self) -> list[str]:
        return sorted(self._entries)

    def accent_keep(self) -> frozenset[str]:
        """Registered forms whose combining accent distinguishes a minimal pair."""
        return frozenset(k for k in self._entries
                         if any("\u0300" <= ch <= "\u036f" for ch in k))

    def snapshot(self) -> dict:
        return {key: {tuple_row(row) for row in rows}
                for key, rows in self._entries.items() if rows}

    def __eq__(self, other):
        return isinstance(other, Lexicon) and self.snapshot() == other.snapshot()


def tuple_row(row) -> tuple:
    cand, prio = row
    return (cand.lemma, cand.pos, cand.disambiguator, cand.language, prio)


def load_lexicon(path, variants: VariantTable | None = None) -> Lexicon:
    """TSV columns: form_key, lemma, pos, disambiguator, language, priority."""
    lex = Lexicon(variants)
    path = Path(path)
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise LexiconFormatError(
                f"{path}:{lineno}: expected at least form_key, lemma, pos")
        form_key, lemma, pos = fields[0], fields[1], fields[2]
        disamb = fields[3] if len(fields) > 3 and fields[3] else None
        language = fields[4] if len(fields) > 4 and fields[4] else None
        try:
            priority = int(fields[5]) if len(fields) > 5 and fields[5] else 0
        except ValueError:
            raise LexiconFormatError(f"{path}:{lineno}: bad priority {fields[5]!r}")
        try:
            cand = Candidate(lemma=lemma, pos=pos, disambiguator=disamb, language=language)
        except ValueError as exc:
            raise LexiconFormatError(f"{path}:{lineno}: {exc}")
        lex.add(form_key, cand, priority)
    return lex


def save_lexicon(lex: Lexicon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# form_key\tlemma\tpos\tdisambiguator\tlanguage\tpriority\n")
        for key in sorted(lex._entries):
            rows = sorted(lex._entries[key],
                          key=lambda row: (-row[1], row[0].lemma, row[0].pos,
                                           row[0].disambiguator or "",
                                           row[0].language or ""))
            for cand, prio in rows:
                fh.write(f"{key}\t{cand.lemma}\t{cand.pos}\t"
                         f"{cand.disambiguator or ''}\t{cand.language or ''}\t{prio}\n")


_DECISION_COLS = 10


def decision_to_line(d: Decision) -> str:
    doc_id, offset = d.occurrence if d.occurrence else ("", "")
    return "\t".join([
        d.timestamp, d.annotator, d.scope, str(doc_id), str(offset),
        d.form_key, d.chosen.lemma, d.chosen.pos,
        d.chosen.disambiguator or "", d.chosen.language or "",
    ])


def decision_from_line(line: str, where: str = "") -> Decision:
    fields = line.split("\t")
    if len(fields) < 8:
        raise LexiconFormatError(f"{where}: expected at least 8 decision fields")
    fields += [""] * (_DECISION_COLS - len(fields))
    (timestamp, annotator, scope, doc_id, offset,
     form_key, lemma, pos, disamb, language) = fields[:_DECISION_COLS]
    occurrence = None
    if scope == SCOPE_OCCURRENCE:
        if not doc_id or not offset:
            raise LexiconFormatError(f"{where}: occurrence decision without reference")
        occurrence = (doc_id, int(offset))
    cand = Candidate(lemma=lemma, pos=pos, disambiguator=disamb or None,
                     language=language or None)
    return Decision(form_key=form_key, scope=scope, chosen=cand,
                    annotator=annotator, timestamp=timestamp, occurrence=occurrence)


def load_decisions(path) -> list[Decision]:
    path = Path(path)
    decisions = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        decisions.append(decision_from_line(line, where=f"{path}:{lineno}"))
    return decisions


def append_decision(path, decision: Decision) -> None:
    """Append one decision to the log; flushed and fsynced before returning."""
    import os
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(decision_to_line(decision) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def save_decisions(path, decisions) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for d in decisions:
            fh.write(decision_to_line(d) + "\n")
