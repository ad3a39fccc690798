#!/usr/bin/env python3
"""Brute-force lemma recount, independent of the freqlex package.

Re-reads the corpus and lexicon TSVs directly, tokenizes with regexes and
recounts lemma frequencies from first principles.  Used to freeze the golden
file the equivalence tests compare the pipeline against; shares no code with
src/freqlex on purpose.

Usage: python3 scripts/oracle_recount.py MANIFEST LEXICON [OUT_TSV]
"""

import re
import sys
from collections import Counter
from pathlib import Path

FOOTNOTE_RE = re.compile(r"⟦[^⟦⟧]*⟧")
SENSE_RE = re.compile(r"\{([^{}]*)\}")
# a word is letters/apostrophes/hyphens/combining accents; digits stand alone
WORD_RE = re.compile(r"\d+|(?:[^\W\d_]|[̀-ͯ'’ʼ-])+")

ENCLITICS = ("таки", "бо", "но", "то")
CONTENT_POS = {"noun", "noun_pl_tantum", "adjective", "pronoun", "numeral",
               "verb", "participle", "adverb"}
VARIANTS = {
    "сь": "ся", "би": "б", "же": "ж", "в": "у", "й": "і",
    "із": "з", "зі": "з", "зо": "з", "підо": "під",
    "увесь": "весь", "ввесь": "весь", "усякий": "всякий",
    "щоби": "щоб", "тілько": "тільки", "скілько": "скільки",
    "ледво": "ледве", "троха": "трохи",
}


def norm_key(form):
    form = form.lower().replace("’", "'").replace("ʼ", "'")
    form = re.sub(r"[̀-ͯ]", "", form)
    return VARIANTS.get(form, form)


def read_lexicon(path):
    entries = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        cols = (line.split("\t") + [""] * 6)[:6]
        form, lemma, pos, disamb, _lang, _prio = cols
        entries.setdefault(norm_key(form), []).append((lemma, pos, disamb or None))
    return entries


def read_docs(manifest):
    base = Path(manifest).parent
    docs = []
    for line in Path(manifest).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        doc_id, rel = cols[0], cols[1]
        docs.append((doc_id, (base / rel).read_text(encoding="utf-8")))
    return docs


def token_stream(text):
    """Yield (norm_form, sense_tag) pairs in document order."""
    text = FOOTNOTE_RE.sub(" ", text)
    text = text.replace("[", "").replace("]", "")
    # pull sense tags out, remembering which word each one follows
    tags = {}  # index into plain-text char positions -> tag

    plain = []
    pos = 0
    out_len = 0
    for m in SENSE_RE.finditer(text):
        chunk = text[pos:m.start()]
        plain.append(chunk)
        out_len += len(chunk)
        tags[out_len - 1] = m.group(1)  # tag belongs to the word ending here
        pos = m.end()
    plain.append(text[pos:])
    plain = "".join(plain)

    for m in WORD_RE.finditer(plain):
        word = m.group(0)
        if not word[0].isdigit():
            word = word.strip("-'’ʼ")
            if not word:
                continue
        tag = tags.get(m.start() + len(m.group(0)) - 1)
        yield word, tag


def lemma_for(word, tag, lexicon):
    if word[0].isdigit():
        return (word, "numeral", None)
    key = norm_key(word)
    cands = lexicon.get(key, [])
    if not cands:
        for part in ENCLITICS:
            if key.endswith("-" + part) and len(key) > len(part) + 1:
                base = norm_key(key[: -len(part) - 1])
                base_cands = lexicon.get(base, [])
                if base_cands and all(c[1] in CONTENT_POS for c in base_cands):
                    key, cands = base, base_cands
                elif base_cands and all(c[1] not in CONTENT_POS for c in base_cands):
                    return (key.upper(), base_cands[0][1], None)
                elif base_cands:
                    key, cands = base, base_cands
                break
    if tag is not None:
        for cand in cands:
            if cand[2] == tag:
                return cand
        return (key.upper(), "other", tag)
    if len(cands) == 1:
        return cands[0]
    if not cands or len({c for c in cands}) > 1:
        return (key.upper(), "other", "?")  # pending / unknown
    return cands[0]


def main(argv):
    manifest, lexicon_path = argv[1], argv[2]
    out = argv[3] if len(argv) > 3 else None
    lexicon = read_lexicon(lexicon_path)
    counts = Counter()
    for _doc_id, text in read_docs(manifest):
        for word, tag in token_stream(text):
            counts[lemma_for(word, tag, lexicon)] += 1
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1], kv[0][2] or ""))
    lines = ["lemma\tpos\tdisambiguator\tabs_freq"]
    lines += [f"{lemma}\t{pos}\t{disamb or ''}\t{freq}"
              for (lemma, pos, disamb), freq in rows]
    body = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
