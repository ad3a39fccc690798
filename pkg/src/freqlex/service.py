"""HTTP review service: the machine asks, the human decides.

Serves the ambiguity queue with KWIC context, accepts decisions (appended
atomically to the decision log), reports progress and re-runs lemmatization
against the updated lexicon on demand.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import lemmatizer
from .lexicon import (SCOPE_GLOBAL, SCOPE_OCCURRENCE, Candidate, Decision,
                      append_decision, load_decisions, load_lexicon,
                      now_timestamp)
from .pipeline import RunConfig, load_corpus_tokens


class OccurrenceRef(BaseModel):
    doc_id: str
    char_offset: int


class DecisionBody(BaseModel):
    form_key: str
    scope: str = SCOPE_GLOBAL
    occurrence: OccurrenceRef | None = None
    lemma: str
    pos: str
    disambiguator: str | None = None
    language: str | None = None
    annotator: str = "anonymous"
    client_token: str | None = None


def _item_json(item: lemmatizer.AmbiguityItem) -> dict:
    left, keyword, right = item.kwic
    return {
        "doc_id": item.doc_id,
        "char_offset": item.char_offset,
        "form_key": item.form_key,
        "candidates": [
            {"lemma": c.lemma, "pos": c.pos,
             "disambiguator": c.disambiguator, "language": c.language,
             "label": c.label()}
            for c in item.candidates
        ],
        "kwic": {"left": left, "keyword": keyword, "right": right},
    }


class ReviewState:
    """Corpus, lexicon and queue held in memory; decision writes serialized."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.decision_log = Path(config.decisions
                                 or Path(config.out_dir) / "decisions.tsv")
        self.decision_log.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._seen_tokens: set[str] = set()
        self.rerun_running = False
        self.reload()

    def reload(self) -> None:
        self.lexicon = load_lexicon(self.config.lexicon)
        self.decisions = (load_decisions(self.decision_log)
                          if self.decision_log.is_file() else [])
        for d in self.decisions:
            self.lexicon.record_decision(d)
        self.tokens = load_corpus_tokens(self.config, self.lexicon)
        self.lemmatized, self.queue = lemmatizer.lemmatize_stream(
            self.tokens, self.lexicon, self.config.kwic_width)
        if self.decisions:
            self.lemmatized = lemmatizer.apply_decisions(self.lemmatized,
                                                         self.decisions)
            self._refresh_queue()

    def _refresh_queue(self) -> None:
        pending = {(lt.token.doc_id, lt.token.char_offset)
                   for lt in self.lemmatized
                   if lt.resolution == lemmatizer.RES_PENDING}
        self.queue = [item for item in self.queue
                      if (item.doc_id, item.char_offset) in pending]

    def progress(self) -> dict:
        total = len(self.lemmatized)
        pending = sum(1 for lt in self.lemmatized
                      if lt.resolution == lemmatizer.RES_PENDING)
        return {"total": total, "pending": pending,
                "resolved": total - pending}

    def kwic(self, form: str, width: int) -> list[dict]:
        by_doc: dict[str, list] = {}
        for token in self.tokens:
            by_doc.setdefault(token.doc_id, []).append(token)
        form_key = self.lexicon.key_for(form)
        hits = []
        for doc_tokens in by_doc.values():
            for i, token in enumerate(doc_tokens):
                if self.lexicon.key_for(token.norm) != form_key:
                    continue
                left = " ".join(t.surface for t in doc_tokens[max(0, i - width):i])
                right = " ".join(t.surface for t in doc_tokens[i + 1:i + 1 + width])
                hits.append({"doc_id": token.doc_id,
                             "char_offset": token.char_offset,
                             "left": left, "keyword": token.surface,
                             "right": right})
        hits.sort(key=lambda h: (h["doc_id"], h["char_offset"]))
        return hits

    def decide(self, body: DecisionBody) -> dict:
        with self._lock:
            if body.client_token and body.client_token in self._seen_tokens:
                return {"status": "ok", "duplicate": True,
                        "progress": self.progress()}
            try:
                chosen = Candidate(lemma=body.lemma, pos=body.pos,
                                   disambiguator=body.disambiguator,
                                   language=body.language)
                occurrence = None
                if body.scope == SCOPE_OCCURRENCE:
                    if body.occurrence is None:
                        raise ValueError("occurrence scope needs a reference")
                    occurrence = (body.occurrence.doc_id,
                                  body.occurrence.char_offset)
                decision = Decision(form_key=body.form_key, scope=body.scope,
                                    chosen=chosen, annotator=body.annotator,
                                    timestamp=now_timestamp(),
                                    occurrence=occurrence)
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            if occurrence is not None:
                known = {(lt.token.doc_id, lt.token.char_offset)
                         for lt in self.lemmatized}
                if occurrence not in known:
                    raise HTTPException(status_code=404,
                                        detail=f"no token at {occurrence}")
            append_decision(self.decision_log, decision)
            self.decisions.append(decision)
            self.lexicon.record_decision(decision)
            self.lemmatized = lemmatizer.apply_decisions(self.lemmatized,
                                                         [decision])
            self._refresh_queue()
            if body.client_token:
                self._seen_tokens.add(body.client_token)
            return {"status": "ok", "duplicate": False,
                    "progress": self.progress()}

    def rerun(self) -> dict:
        with self._lock:
            if self.rerun_running:
                raise HTTPException(status_code=409, detail="rerun in progress")
            self.rerun_running = True
            try:
                self.reload()
            finally:
                self.rerun_running = False
            return {"status": "ok", "progress": self.progress()}


def create_app(config: RunConfig) -> FastAPI:
    state = ReviewState(config)
    app = FastAPI(title="freqlex review service")
    app.state.review = state

    @app.get("/api/queue")
    def get_queue(limit: int = 20, offset: int = 0, form: str | None = None,
                  script: str | None = None, unknown_only: bool = False):
        items = state.queue
        if form:
            key = state.lexicon.key_for(form)
            items = [i for i in items if i.form_key == key]
        if script:
            offsets = {(t.doc_id, t.char_offset) for t in state.tokens
                       if t.script == script}
            items = [i for i in items if (i.doc_id, i.char_offset) in offsets]
        if unknown_only:
            items = [i for i in items if not i.candidates]
        page = items[offset:offset + limit]
        return {"items": [_item_json(i) for i in page],
                "total": len(items), "offset": offset,
                "progress": state.progress()}

    @app.get("/api/kwic")
    def get_kwic(form: str, width: int = 5):
        return {"form": form, "width": width,
                "occurrences": state.kwic(form, width)}

    @app.get("/api/progress")
    def get_progress():
        return state.progress()

    @app.post("/api/decision")
    def post_decision(body: DecisionBody):
        return state.decide(body)

    @app.post("/api/rerun")
    def post_rerun():
        return state.rerun()

    return app
