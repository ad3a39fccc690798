"""Lookup-driven lemmatization.

Applies POS-specific reduction schemes and the lexicon to the token stream.
Forms the lexicon resolves uniquely (or that carry a sense tag) lemmatize
automatically; everything else lands in an ambiguity queue with KWIC context
for a human to settle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .lexicon import (CONTENT_POS, POS_VALUES, SCOPE_GLOBAL, Candidate,
                      Decision, Lexicon)
from .tokenizer import SCRIPT_DIGIT, Token, detect_hyphen_enclitic

log = logging.getLogger(__name__)

RES_LEXICON = "lexicon_unique"
RES_SENSE = "sense_annotation"
RES_HUMAN = "human_decision"
RES_SELF = "self_lemma_unknown"
RES_PENDING = "pending"

DEFAULT_KWIC_WIDTH = 5


class SchemeError(ValueError):
    """No reduction scheme defined for the requested part of speech."""


@dataclass(frozen=True)
class LemmatizedToken:
    token: Token
    form_key: str
    chosen: Candidate | None
    resolution: str

    @property
    def lemma(self) -> str | None:
        return self.chosen.lemma if self.chosen else None

    @property
    def pos(self) -> str | None:
        return self.chosen.pos if self.chosen else None


@dataclass(frozen=True)
class AmbiguityItem:
    doc_id: str
    char_offset: int
    form_key: str
    candidates: tuple[Candidate, ...]  # empty = unknown form
    kwic: tuple[str, str, str]  # left context, keyword, right context


def reduce_by_scheme(form: str, pos: str, features: dict | None = None) -> str:
    """Reduce an inflected form to its headword under the POS scheme.

    `features` come from lexicon data (this engine is lookup-driven, not a
    generative morphology): `initial` is the dictionary form; degree words
    carry `degree` and, for suppletive series, `suppletive_head`; plural-only
    nouns carry `number_class`.
    """
    if pos not in POS_VALUES:
        raise SchemeError(f"no reduction scheme for POS {pos!r} (form {form!r})")
    features = features or {}
    initial = features.get("initial", form)
    if pos == "foreign":
        # Latin-script lemmas are lowercased except proper names.
        return initial if features.get("proper_name") else initial.lower()
    if pos in ("adjective", "participle", "adverb"):
        head = features.get("suppletive_head")
        if head and features.get("degree") in ("comparative", "superlative"):
            # suppletive degrees reduce to the comparative head, never to the
            # positive (НАЙБІЛЬШИЙ -> БІЛЬШИЙ, kept apart from ВЕЛИКИЙ)
            return head.upper()
        return initial.upper()
    if pos in ("noun", "noun_pl_tantum"):
        # pluralia tantum and person-class plurals keep the nominative plural
        # as `initial`; ordinary nouns reduce to nominative singular
        return initial.upper()
    # verbs to the infinitive, pronouns/numerals per declension type,
    # function words to themselves
    return initial.upper()


def _candidates_for(token: Token, lexicon: Lexicon) -> tuple[str, list[Candidate]]:
    """Effective lookup key and candidate list, after enclitic handling."""
    key = lexicon.key_for(token.norm)
    direct = lexicon.lookup(key)
    if direct:
        return key, direct
    split = detect_hyphen_enclitic(token)
    if split:
        base, _particle = split
        base_key = lexicon.key_for(base)
        base_cands = lexicon.lookup(base_key)
        if base_cands:
            content = [c for c in base_cands if c.pos in CONTENT_POS]
            if len(content) == len(base_cands):
                # content word: shed the particle, lemmatize the base
                return base_key, base_cands
            if not content:
                # function word keeps the particle as part of the lemma
                return key, [Candidate(lemma=key.upper(), pos=base_cands[0].pos)]
            # mixed content/function readings: a human decides over the base
            return base_key, base_cands
    return key, []


def strip_enclitic_if_content_word(token: Token, lexicon: Lexicon) -> str:
    """Effective form key for a token whose surface ends in a hyphen particle."""
    key, _cands = _candidates_for(token, lexicon)
    return key


def _kwic(doc_tokens: list[Token], idx: int, width: int) -> tuple[str, str, str]:
    left = " ".join(t.surface for t in doc_tokens[max(0, idx - width):idx])
    right = " ".join(t.surface for t in doc_tokens[idx + 1:idx + 1 + width])
    return left, doc_tokens[idx].surface, right


def lemmatize_stream(tokens: list[Token], lexicon: Lexicon,
                     kwic_width: int = DEFAULT_KWIC_WIDTH,
                     ) -> tuple[list[LemmatizedToken], list[AmbiguityItem]]:
    """Lemmatize every token; ambiguous and unknown forms queue for review.

    Mutates the lexicon only when a sense tag names a candidate the lexicon
    does not know yet (annotator-authored candidates are added and logged).
    """
    by_doc: dict[str, list[Token]] = {}
    doc_pos: list[int] = []
    for token in tokens:
        doc_tokens = by_doc.setdefault(token.doc_id, [])
        doc_pos.append(len(doc_tokens))
        doc_tokens.append(token)

    result: list[LemmatizedToken] = []
    queue: list[AmbiguityItem] = []
    for tok_i, token in enumerate(tokens):
        if token.script == SCRIPT_DIGIT:
            # each distinct numeral string is its own lemma
            cand = Candidate(lemma=token.norm, pos="numeral")
            result.append(LemmatizedToken(token, token.norm, cand, RES_SELF))
            continue
        key, cands = _candidates_for(token, lexicon)
        if token.sense_tag is not None:
            match = [c for c in cands if c.disambiguator == token.sense_tag]
            if match:
                result.append(LemmatizedToken(token, key, match[0], RES_SENSE))
            else:
                cand = Candidate(lemma=key.upper(), pos="other",
                                 disambiguator=token.sense_tag)
                lexicon.add(key, cand)
                log.info("sense tag %r on %r matched no candidate; "
                         "authored new candidate %s", token.sense_tag, key,
                         cand.label())
                result.append(LemmatizedToken(token, key, cand, RES_SENSE))
            continue
        if len(cands) == 1:
            result.append(LemmatizedToken(token, key, cands[0], RES_LEXICON))
            continue
        decided = lexicon.top_decided(key)
        if decided is not None and decided in cands:
            result.append(LemmatizedToken(token, key, decided, RES_HUMAN))
            continue
        result.append(LemmatizedToken(token, key, None, RES_PENDING))
        idx = doc_pos[tok_i]
        queue.append(AmbiguityItem(
            doc_id=token.doc_id,
            char_offset=token.char_offset,
            form_key=key,
            candidates=tuple(cands),
            kwic=_kwic(by_doc[token.doc_id], idx, kwic_width),
        ))
    queue.sort(key=lambda item: (item.doc_id, item.char_offset))
    return result, queue


def apply_decisions(lemmatized: list[LemmatizedToken],
                    decisions: list[Decision]) -> list[LemmatizedToken]:
    """Resolve pending tokens from a decision log.

    Global decisions cover every pending occurrence of the form; occurrence
    decisions bind exactly one token.  For conflicting global decisions the
    latest wins (a warning is logged).
    """
    global_map: dict[str, Candidate] = {}
    occ_map: dict[tuple[str, int], Decision] = {}
    for d in decisions:
        if d.scope == SCOPE_GLOBAL:
            if d.form_key in global_map and global_map[d.form_key] != d.chosen:
                log.warning("conflicting global decisions for %r; latest wins",
                            d.form_key)
            global_map[d.form_key] = d.chosen
        else:
            occ_map[d.occurrence] = d

    positions = {(lt.token.doc_id, lt.token.char_offset) for lt in lemmatized}
    for occ in occ_map:
        if occ not in positions:
            raise LookupError(f"occurrence decision references unknown token {occ}")

    out: list[LemmatizedToken] = []
    for lt in lemmatized:
        if lt.resolution != RES_PENDING:
            out.append(lt)
            continue
        occ = (lt.token.doc_id, lt.token.char_offset)
        if occ in occ_map:
            out.append(LemmatizedToken(lt.token, lt.form_key,
                                       occ_map[occ].chosen, RES_HUMAN))
        elif lt.form_key in global_map:
            out.append(LemmatizedToken(lt.token, lt.form_key,
                                       global_map[lt.form_key], RES_HUMAN))
        else:
            out.append(lt)
    return out


def serialize_candidates(candidates) -> str:
    return ";".join(
        "|".join([c.lemma, c.pos, c.disambiguator or "", c.language or ""])
        for c in candidates)


def write_queue_tsv(items, path) -> None:
    """Pending-queue export: doc_id, offset, form, candidates, left|keyword|right."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("doc_id\toffset\tform\tcandidates\tleft\tkeyword\tright\n")
        for item in items:
            left, keyword, right = item.kwic
            fh.write(f"{item.doc_id}\t{item.char_offset}\t{item.form_key}\t"
                     f"{serialize_candidates(item.candidates)}\t"
                     f"{left}\t{keyword}\t{right}\n")
