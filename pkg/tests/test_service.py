import pytest
from fastapi.testclient import TestClient

from freqlex.pipeline import RunConfig
from freqlex.service import create_app


@pytest.fixture
def review(tmp_path):
    """Small corpus with one ambiguous form (twice) and one unknown form."""
    (tmp_path / "doc.txt").write_text(
        "він хотів мати хату і мати спокій та ще загадка тут",
        encoding="utf-8")
    (tmp_path / "manifest.tsv").write_text("d1\tdoc.txt\n", encoding="utf-8")
    (tmp_path / "lexicon.tsv").write_text(
        "мати\tМАТИ\tnoun\tім.\t\t0\n"
        "мати\tМАТИ\tverb\tдієсл.\t\t0\n"
        "він\tВІН\tpronoun\t\t\t0\n"
        "хотів\tХОТІТИ\tverb\t\t\t0\n"
        "хату\tХАТА\tnoun\t\t\t0\n"
        "і\tІ\tconjunction\t\t\t0\n"
        "спокій\tСПОКІЙ\tnoun\t\t\t0\n"
        "та\tТА\tconjunction\t\t\t0\n"
        "ще\tЩЕ\tparticle\t\t\t0\n"
        "тут\tТУТ\tadverb\t\t\t0\n",
        encoding="utf-8")
    config = RunConfig(manifest=tmp_path / "manifest.tsv",
                       lexicon=tmp_path / "lexicon.tsv",
                       out_dir=tmp_path / "out")
    client = TestClient(create_app(config))
    return client, tmp_path


def test_queue_lists_pending_items(review):
    client, _ = review
    data = client.get("/api/queue").json()
    assert data["total"] == 3  # мати x2 + загадка
    forms = [item["form_key"] for item in data["items"]]
    assert forms.count("мати") == 2 and "загадка" in forms
    mati = next(i for i in data["items"] if i["form_key"] == "мати")
    assert {c["disambiguator"] for c in mati["candidates"]} == {"ім.", "дієсл."}
    assert mati["kwic"]["keyword"] == "мати"


def test_queue_paging_and_filters(review):
    client, _ = review
    page = client.get("/api/queue", params={"limit": 1, "offset": 1}).json()
    assert len(page["items"]) == 1 and page["total"] == 3
    only_mati = client.get("/api/queue", params={"form": "мати"}).json()
    assert only_mati["total"] == 2
    unknown = client.get("/api/queue", params={"unknown_only": True}).json()
    assert [i["form_key"] for i in unknown["items"]] == ["загадка"]
    assert unknown["items"][0]["candidates"] == []


def test_kwic_matches_independent_windowing(review):
    client, tmp_path = review
    words = (tmp_path / "doc.txt").read_text(encoding="utf-8").split()
    got = client.get("/api/kwic", params={"form": "мати", "width": 2}).json()
    # brute-force expectation straight from the word list
    want = []
    for i, w in enumerate(words):
        if w == "мати":
            want.append((" ".join(words[max(0, i - 2):i]),
                         " ".join(words[i + 1:i + 3])))
    assert [(h["left"], h["right"]) for h in got["occurrences"]] == want
    assert all(h["keyword"] == "мати" for h in got["occurrences"])


def test_progress_counts(review):
    client, _ = review
    progress = client.get("/api/progress").json()
    assert progress == {"total": 11, "pending": 3, "resolved": 8}


def test_global_decision_resolves_all_occurrences(review):
    client, tmp_path = review
    resp = client.post("/api/decision", json={
        "form_key": "мати", "scope": "global",
        "lemma": "МАТИ", "pos": "verb", "disambiguator": "дієсл.",
        "annotator": "ann"})
    assert resp.status_code == 200
    assert resp.json()["progress"]["pending"] == 1
    assert client.get("/api/queue", params={"form": "мати"}).json()["total"] == 0
    # decision is on disk for later rebuilds
    log = (tmp_path / "out" / "decisions.tsv").read_text(encoding="utf-8")
    assert "мати" in log and "global" in log


def test_occurrence_decision_resolves_exactly_one(review):
    client, _ = review
    items = client.get("/api/queue", params={"form": "мати"}).json()["items"]
    first = items[0]
    resp = client.post("/api/decision", json={
        "form_key": "мати", "scope": "occurrence",
        "occurrence": {"doc_id": first["doc_id"],
                       "char_offset": first["char_offset"]},
        "lemma": "МАТИ", "pos": "noun", "disambiguator": "ім."})
    assert resp.status_code == 200
    assert client.get("/api/queue", params={"form": "мати"}).json()["total"] == 1


def test_client_token_dedup(review):
    client, _ = review
    body = {"form_key": "мати", "scope": "global", "lemma": "МАТИ",
            "pos": "verb", "disambiguator": "дієсл.", "client_token": "tok-1"}
    first = client.post("/api/decision", json=body).json()
    second = client.post("/api/decision", json=body).json()
    assert not first["duplicate"] and second["duplicate"]
    assert first["progress"] == second["progress"]


def test_bad_decision_rejected(review):
    client, _ = review
    resp = client.post("/api/decision", json={
        "form_key": "мати", "scope": "global", "lemma": "X", "pos": "gerund"})
    assert resp.status_code == 422
    resp = client.post("/api/decision", json={
        "form_key": "мати", "scope": "occurrence", "lemma": "МАТИ",
        "pos": "noun"})
    assert resp.status_code == 422
    resp = client.post("/api/decision", json={
        "form_key": "мати", "scope": "occurrence",
        "occurrence": {"doc_id": "nope", "char_offset": 99},
        "lemma": "МАТИ", "pos": "noun"})
    assert resp.status_code == 404


def test_rerun_replays_decision_log(review):
    client, _ = review
    client.post("/api/decision", json={
        "form_key": "мати", "scope": "global", "lemma": "МАТИ",
        "pos": "verb", "disambiguator": "дієсл."})
    resp = client.post("/api/rerun")
    assert resp.status_code == 200
    assert resp.json()["progress"]["pending"] == 1  # загадка still open
