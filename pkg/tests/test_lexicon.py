import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freqlex import lexicon as lx


def make_lexicon():
    lex = lx.Lexicon()
    lex.add("адвоката", lx.Candidate("АДВОКАТ", "noun"))
    lex.add("мати", lx.Candidate("МАТИ", "noun", disambiguator="ім."))
    lex.add("мати", lx.Candidate("МАТИ", "verb", disambiguator="дієсл."))
    lex.add("die", lx.Candidate("die", "foreign", language="de"))
    return lex


class TestCandidate:
    def test_rejects_unknown_pos(self):
        with pytest.raises(ValueError, match="unknown POS"):
            lx.Candidate("X", "gerund")

    def test_foreign_requires_language(self):
        with pytest.raises(ValueError, match="language"):
            lx.Candidate("die", "foreign")

    def test_label_shows_disambiguator(self):
        assert lx.Candidate("МАТИ", "noun", "ім.").label() == "МАТИ (ім.)"
        assert lx.Candidate("ХАТА", "noun").label() == "ХАТА"


class TestVariantTable:
    def test_members_map_to_head(self):
        table = lx.VariantTable()
        assert table.canonicalize("тілько") == "тільки"
        assert table.canonicalize("сь") == "ся"
        assert table.canonicalize("із") == "з"
        assert table.canonicalize("щоби") == "щоб"

    def test_speech_characterization_spellings_not_grouped(self):
        table = lx.VariantTable()
        assert table.canonicalize("адукат") == "адукат"
        assert table.canonicalize("казета") == "казета"

    def test_overlapping_groups_rejected(self):
        groups = (lx.VariantGroup("а", frozenset({"а", "б"}), "euphonic"),
                  lx.VariantGroup("в", frozenset({"в", "б"}), "euphonic"))
        with pytest.raises(ValueError, match="two groups"):
            lx.VariantTable(groups)

    def test_head_must_be_member(self):
        with pytest.raises(ValueError, match="not among members"):
            lx.VariantGroup("а", frozenset({"б"}), "euphonic")


class TestLexicon:
    def test_lookup_case_and_apostrophe_insensitive(self):
        lex = make_lexicon()
        assert lex.lookup("АДВОКАТА") == [lx.Candidate("АДВОКАТ", "noun")]
        lex.add("ім'я", lx.Candidate("ІМ'Я", "noun"))
        assert lex.lookup("ім’я")  # typographic apostrophe resolves

    def test_variant_members_share_entry(self):
        lex = lx.Lexicon()
        lex.add("тільки", lx.Candidate("ТІЛЬКИ", "particle"))
        assert lex.lookup("тілько") == [lx.Candidate("ТІЛЬКИ", "particle")]

    def test_add_is_idempotent(self):
        lex = make_lexicon()
        before = lex.snapshot()
        lex.add("адвоката", lx.Candidate("АДВОКАТ", "noun"))
        assert lex.snapshot() == before

    def test_homograph_order_is_stable(self):
        lex = make_lexicon()
        cands = lex.lookup("мати")
        assert [c.disambiguator for c in cands] == ["ім.", "дієсл."]


class TestDecisions:
    def decision(self, form, cand, scope="global", occurrence=None):
        return lx.Decision(form_key=form, scope=scope, chosen=cand,
                           annotator="ann", timestamp=lx.now_timestamp(),
                           occurrence=occurrence)

    def test_global_decision_promotes_candidate(self):
        lex = make_lexicon()
        chosen = lx.Candidate("МАТИ", "verb", disambiguator="дієсл.")
        assert lex.top_decided("мати") is None
        lex.record_decision(self.decision("мати", chosen))
        assert lex.top_decided("мати") == chosen

    def test_rerecording_is_idempotent(self):
        lex = make_lexicon()
        chosen = lx.Candidate("МАТИ", "noun", disambiguator="ім.")
        d = self.decision("мати", chosen)
        lex.record_decision(d)
        snap = lex.snapshot()
        lex.record_decision(d)
        assert lex.snapshot() == snap

    def test_latest_global_decision_wins(self):
        lex = make_lexicon()
        first = lx.Candidate("МАТИ", "noun", disambiguator="ім.")
        second = lx.Candidate("МАТИ", "verb", disambiguator="дієсл.")
        lex.record_decision(self.decision("мати", first))
        lex.record_decision(self.decision("мати", second))
        assert lex.top_decided("мати") == second

    def test_occurrence_decision_does_not_touch_lexicon(self):
        lex = make_lexicon()
        before = lex.snapshot()
        lex.record_decision(self.decision(
            "мати", lx.Candidate("МАТИ", "noun", disambiguator="ім."),
            scope="occurrence", occurrence=("d1", 10)))
        assert lex.snapshot() == before

    def test_scope_occurrence_consistency_enforced(self):
        cand = lx.Candidate("X", "noun")
        with pytest.raises(ValueError, match="occurrence"):
            self.decision("x", cand, scope="occurrence")
        with pytest.raises(ValueError, match="occurrence"):
            self.decision("x", cand, scope="global", occurrence=("d", 1))


class TestPersistence:
    def test_lexicon_round_trip(self, tmp_path):
        lex = make_lexicon()
        path = tmp_path / "lex.tsv"
        lx.save_lexicon(lex, path)
        assert lx.load_lexicon(path) == lex

    def test_save_is_deterministic(self, tmp_path):
        lex = make_lexicon()
        lx.save_lexicon(lex, tmp_path / "a.tsv")
        lx.save_lexicon(lex, tmp_path / "b.tsv")
        assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()

    def test_format_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("форма\tЛЕМА\n", encoding="utf-8")
        with pytest.raises(lx.LexiconFormatError, match=":1:"):
            lx.load_lexicon(path)

    def test_decision_log_round_trip(self, tmp_path):
        path = tmp_path / "log.tsv"
        d1 = lx.Decision("мати", "global",
                         lx.Candidate("МАТИ", "noun", disambiguator="ім."),
                         "ann", "2026-01-01T00:00:00Z")
        d2 = lx.Decision("с", "occurrence",
                         lx.Candidate("s", "foreign", language="la"),
                         "ann", "2026-01-01T00:00:01Z", occurrence=("d1", 42))
        lx.append_decision(path, d1)
        lx.append_decision(path, d2)
        assert lx.load_decisions(path) == [d1, d2]


@given(st.lists(st.tuples(
    st.sampled_from(["хата", "вода", "поле", "ліс"]),
    st.sampled_from(["ХАТА", "ВОДА", "ПОЛЕ", "ЛІС"]),
    st.sampled_from(["noun", "adverb", "particle"]))))
@settings(max_examples=50, deadline=None)
def test_round_trip_arbitrary_entries(tmp_path_factory, rows):
    lex = lx.Lexicon()
    for form, lemma, pos in rows:
        lex.add(form, lx.Candidate(lemma, pos))
    path = tmp_path_factory.mktemp("lx") / "lex.tsv"
    lx.save_lexicon(lex, path)
    assert lx.load_lexicon(path) == lex
