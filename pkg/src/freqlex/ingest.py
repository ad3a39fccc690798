"""Corpus ingestion.

Loads raw documents, strips editorial footnotes, collapses square-bracket
abbreviation expansions (КС[ЬОНДЗ] -> КСЬОНДЗ) and pulls inline sense marks
(word{tag}) out of the running text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

MODERN_EDITION = "modern_edition"
FIRST_EDITION = "first_edition"
PROFILES = (MODERN_EDITION, FIRST_EDITION)

# Default footnote delimiters; corpus packages may override.
NOTE_OPEN = "\u27e6"
NOTE_CLOSE = "\u27e7"

_APOSTROPHES = "'’ʼ"


class IngestError(ValueError):
    """Malformed source: bad encoding, unbalanced markers, stray sense tags."""


@dataclass(frozen=True)
class SourceDocument:
    doc_id: str
    title: str
    raw_text: str
    orthography_profile: str
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CleanText:
    text: str
    # (start, end, tag) with end exclusive; character offsets into `text`
    annotations: tuple[tuple[int, int, str], ...]
    provenance: str


def _normalize_newlines(text: str) -> str:
    return text.replace("\r\n", "\n").replace("\r", "\n")


def load_document(path, profile: str, doc_id: str | None = None,
                  title: str = "", metadata: dict | None = None) -> SourceDocument:
    """Read a UTF-8 text file; newlines are normalized to LF."""
    if profile not in PROFILES:
        raise ValueError(f"unknown orthography profile {profile!r}")
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(
            f"{path}: invalid UTF-8 at byte offset {exc.start}") from exc
    if text.startswith("\ufeff"):
        text = text[1:]
    return SourceDocument(
        doc_id=doc_id or path.stem,
        title=title or path.stem,
        raw_text=_normalize_newlines(text),
        orthography_profile=profile,
        metadata=dict(metadata or {}),
    )


def load_manifest(manifest_path, default_profile: str = MODERN_EDITION) -> list[SourceDocument]:
    """Read a corpus manifest (TSV: doc_id, path, profile, metadata k=v;k=v).

    Document paths are resolved relative to the manifest's directory.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise IngestError(f"manifest not found: {manifest_path}")
    base = manifest_path.parent
    docs = []
    seen = set()
    for lineno, line in enumerate(manifest_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise IngestError(f"{manifest_path}:{lineno}: expected at least doc_id and path")
        doc_id, rel = fields[0], fields[1]
        if doc_id in seen:
            raise IngestError(f"{manifest_path}:{lineno}: duplicate doc_id {doc_id!r}")
        seen.add(doc_id)
        profile = fields[2] if len(fields) > 2 and fields[2] else default_profile
        metadata = {}
        if len(fields) > 3 and fields[3]:
            for pair in fields[3].split(";"):
                if pair:
                    key, _, value = pair.partition("=")
                    metadata[key] = value
        docs.append(load_document(base / rel, profile, doc_id=doc_id, metadata=metadata))
    return docs


def strip_editorial_notes(raw: str, note_open: str = NOTE_OPEN,
                          note_close: str = NOTE_CLOSE) -> str:
    """Remove delimited footnote bodies; main-text character order is kept."""
    out = []
    pos = 0
    while True:
        start = raw.find(note_open, pos)
        chunk_end = start if start >= 0 else len(raw)
        stray = raw.find(note_close, pos, chunk_end)
        if stray >= 0:
            raise IngestError(f"unbalanced footnote close marker at {stray}")
        out.append(raw[pos:chunk_end])
        if start < 0:
            break
        body_start = start + len(note_open)
        close = raw.find(note_close, body_start)
        if close < 0:
            raise IngestError(f"unterminated footnote opened at {start}")
        nested = raw.find(note_open, body_start, close)
        if nested >= 0:
            raise IngestError(f"nested footnote marker at {nested}")
        pos = close + len(note_close)
    return "".join(out)


def expand_bracketed_abbreviations(text: str) -> str:
    """Collapse editorial expansions: "КС[ЬОНДЗ]" -> "КСЬОНДЗ"."""
    out = []
    depth = 0
    opened_at = -1
    for i, ch in enumerate(text):
        if ch == "[":
            if depth:
                raise IngestError(f"nested bracket at {i}")
            depth = 1
            opened_at = i
        elif ch == "]":
            if not depth:
                raise IngestError(f"unmatched closing bracket at {i}")
            depth = 0
        else:
            out.append(ch)
    if depth:
        raise IngestError(f"unclosed bracket at {opened_at}")
    return "".join(out)


def _is_word_char(ch: str) -> bool:
    return (ch.isalpha() or ch.isdigit() or ch in _APOSTROPHES or ch == "-"
            or "\u0300" <= ch <= "\u036f")


def parse_sense_annotations(text: str, provenance: str = "") -> CleanText:
    """Extract word{tag} sense marks; tags leave the running text."""
    out: list[str] = []
    annotations: list[tuple[int, int, str]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "{":
            close = text.find("}", i + 1)
            if close < 0:
                raise IngestError(f"unterminated '{{' at {i}")
            tag = text[i + 1:close]
            if "{" in tag:
                raise IngestError(f"nested '{{' at {i + 1 + tag.index('{')}")
            end = len(out)
            start = end
            while start > 0 and _is_word_char(out[start - 1]):
                start -= 1
            if start == end:
                raise IngestError(f"sense mark with no preceding word at {i}")
            if annotations and annotations[-1][1] > start:
                raise IngestError(f"overlapping sense marks at {i}")
            annotations.append((start, end, tag))
            i = close + 1
        else:
            out.append(ch)
            i += 1
    return CleanText(text="".join(out), annotations=tuple(annotations),
                     provenance=provenance)


def clean_document(doc: SourceDocument, note_open: str = NOTE_OPEN,
                   note_close: str = NOTE_CLOSE) -> CleanText:
    """Full ingest for one document: notes out, brackets collapsed, tags parsed."""
    text = strip_editorial_notes(doc.raw_text, note_open, note_close)
    text = expand_bracketed_abbreviations(text)
    return parse_sense_annotations(text, provenance=doc.doc_id)
