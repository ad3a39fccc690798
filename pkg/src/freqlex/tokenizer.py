"""Tokenization and script classification.

A token is a maximal run of letters, apostrophes, hyphens and combining
accents, or a maximal run of digits; everything else delimits.  Leading and
trailing hyphens/apostrophes are punctuation, only internal ones count as
letters, so hyphenated compounds (з-поміж) stay one token while a dash
between spaces is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ingest import CleanText

SCRIPT_CYRILLIC = "cyrillic"
SCRIPT_LATIN = "latin"
SCRIPT_DIGIT = "digit"
SCRIPT_MIXED = "mixed"
SCRIPTS = (SCRIPT_CYRILLIC, SCRIPT_LATIN, SCRIPT_DIGIT, SCRIPT_MIXED)

APOSTROPHE = "'"
_APOSTROPHE_VARIANTS = "’ʼ"
_EDGE_STRIP = "-" + APOSTROPHE + _APOSTROPHE_VARIANTS

# Hyphen-attached particles that content words shed before lemmatization.
ENCLITIC_PARTICLES = ("таки", "бо", "но", "то")

# Forms written separately in the first-edition orthography (reflexive particle).
_STANDALONE_PARTICLES = frozenset({"ся", "сь"})


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str
    script: str
    doc_id: str
    char_offset: int
    sense_tag: str | None = None
    hyphenated: bool = False
    standalone_particle: bool = False


def normalize_apostrophes(text: str) -> str:
    for variant in _APOSTROPHE_VARIANTS:
        text = text.replace(variant, APOSTROPHE)
    return text


def strip_combining(text: str) -> str:
    return "".join(ch for ch in text if not "\u0300" <= ch <= "\u036f")


def _is_combining(ch: str) -> bool:
    return "\u0300" <= ch <= "\u036f"


def _is_cyrillic_letter(ch: str) -> bool:
    return ("\u0400" <= ch <= "\u052f" or "\u1c80" <= ch <= "\u1c8f"
            or "\u2de0" <= ch <= "\u2dff" or "\ua640" <= ch <= "\ua69f")


def _is_latin_letter(ch: str) -> bool:
    return ("a" <= ch <= "z" or "A" <= ch <= "Z"
            or "\u00c0" <= ch <= "\u024f" or "\u1e00" <= ch <= "\u1eff")


def classify_script(surface: str) -> str:
    """cyrillic / latin if all letters are from one script, digit for pure
    digit strings, mixed otherwise."""
    has_cyr = has_lat = has_other = has_letter = False
    for ch in surface:
        if ch.isdigit():
            continue
        if ch.isalpha():
            has_letter = True
            if _is_cyrillic_letter(ch):
                has_cyr = True
            elif _is_latin_letter(ch):
                has_lat = True
            else:
                has_other = True
    if not has_letter:
        return SCRIPT_DIGIT if surface and all(ch.isdigit() for ch in surface) else SCRIPT_MIXED
    if has_cyr and not has_lat and not has_other:
        return SCRIPT_CYRILLIC
    if has_lat and not has_cyr and not has_other:
        return SCRIPT_LATIN
    return SCRIPT_MIXED


def _is_token_char(ch: str) -> bool:
    return (ch.isalpha() and not ch.isdigit()) or ch in _EDGE_STRIP or _is_combining(ch)


def _make_norm(surface: str, accent_keep: frozenset[str]) -> str:
    norm = normalize_apostrophes(surface.lower())
    if norm in accent_keep:
        return norm
    return strip_combining(norm)


def tokenize(clean: CleanText, accent_keep: frozenset[str] = frozenset()) -> list[Token]:
    """Segment clean text into tokens, attaching sense tags by offset.

    `accent_keep` lists case-folded forms whose combining accent is
    meaning-bearing (minimal pairs registered in the lexicon); all other
    accents are dropped from `norm` but kept in `surface`.
    """
    text = clean.text
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_build_token(text[i:j], i, clean, accent_keep))
            i = j
        elif _is_token_char(ch):
            j = i
            while j < n and _is_token_char(text[j]):
                j += 1
            seg = text[i:j]
            lead = 0
            while lead < len(seg) and seg[lead] in _EDGE_STRIP:
                lead += 1
            tail = len(seg)
            while tail > lead and seg[tail - 1] in _EDGE_STRIP:
                tail -= 1
            if tail > lead:
                tokens.append(_build_token(seg[lead:tail], i + lead, clean, accent_keep))
            i = j
        else:
            i += 1
    return tokens


def _build_token(surface: str, offset: int, clean: CleanText,
                 accent_keep: frozenset[str]) -> Token:
    sense_tag = None
    end = offset + len(surface)
    for start, stop, tag in clean.annotations:
        if start < end and stop > offset:
            sense_tag = tag
            break
    norm = _make_norm(surface, accent_keep)
    return Token(
        surface=surface,
        norm=norm,
        script=classify_script(surface),
        doc_id=clean.provenance,
        char_offset=offset,
        sense_tag=sense_tag,
        hyphenated="-" in surface,
        standalone_particle=norm in _STANDALONE_PARTICLES,
    )


def detect_hyphen_enclitic(token: Token) -> tuple[str, str] | None:
    """Split a hyphenated form ending in -бо/-но/-таки/-то.

    Returns (base, particle) or None.  Whether the split is applied is the
    lemmatizer's call: function-word combinations keep the particle.
    """
    if not token.hyphenated:
        return None
    for particle in ENCLITIC_PARTICLES:
        suffix = "-" + particle
        if token.norm.endswith(suffix) and len(token.norm) > len(suffix):
            return token.norm[:-len(suffix)], particle
    return None


def count_script_classes(tokens) -> dict[str, int]:
    counts = {script: 0 for script in SCRIPTS}
    for token in tokens:
        counts[token.script] += 1
    return counts


def write_tokens_tsv(tokens, path) -> None:
    """Token stream as TSV: doc_id, offset, surface, norm, script, sense_tag, flags."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("doc_id\toffset\tsurface\tnorm\tscript\tsense_tag\tflags\n")
        for t in tokens:
            flags = ("h" if t.hyphenated else "") + ("s" if t.standalone_particle else "")
            fh.write(f"{t.doc_id}\t{t.char_offset}\t{t.surface}\t{t.norm}\t"
                     f"{t.script}\t{t.sense_tag or ''}\t{flags}\n")
