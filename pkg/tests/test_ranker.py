import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dataref.detector import ArticleText, ReferenceCandidate
from dataref.dictionary import Feature
from dataref.ranker import (RankedMatch, RankerConfig, RankingCorpus,
                            aggregate_per_feature, cosine, idf, rank_candidates,
                            set_similarity, tf_weight, tfidf_score,
                            weight_vector, year_boost)
from dataref.registry import DatasetRecord, RegistryIndex

ALLBUS = Feature("Allbus", "abbreviation")


def _ref(segment, feature=ALLBUS, article_id="a1"):
    return ReferenceCandidate(article_id, segment, (0, len(segment)), feature, 0, segment)


class TestWeights:
    def test_tf_zero(self):
        assert tf_weight(0) == 0.0

    def test_tf_one(self):
        assert tf_weight(1) == 1.0

    def test_tf_thousand(self):
        assert tf_weight(1000) == pytest.approx(4.0)

    def test_idf_examples(self):
        assert idf(1000, 10) == pytest.approx(2.0)
        assert idf(7, 7) == 0.0
        assert idf(45, 3) == pytest.approx(math.log10(15), abs=1e-9)

    def test_idf_preconditions(self):
        with pytest.raises(ValueError):
            idf(10, 0)
        with pytest.raises(ValueError):
            idf(10, 11)


class TestTfidfScore:
    def test_no_shared_term_is_zero(self):
        corpus = RankingCorpus.build([("d1", "alpha beta"), ("d2", "gamma")])
        assert tfidf_score("delta epsilon", "alpha beta", corpus) == 0.0

    def test_term_in_every_document_is_zero(self):
        corpus = RankingCorpus.build([("d1", "common x"), ("d2", "common y"),
                                      ("d3", "common z")])
        assert tfidf_score("common", "common x", corpus) == 0.0

    def test_toy_corpus_matches_oracle(self):
        docs = [("d1", "allbus study 2010 study"), ("d2", "piaac survey 2010"),
                ("d3", "allbus wave data")]
        corpus = RankingCorpus.build(docs)
        query, doc = "allbus study data", "allbus study 2010 study"
        expected = oracles.brute_tfidf_score(query.split(), doc.split(),
                                             [d.split() for _, d in docs])
        assert tfidf_score(query, doc, corpus) == pytest.approx(expected, abs=1e-9)


class TestCosine:
    def test_identical_vectors(self):
        v = {"a": 1.5, "b": 0.5}
        assert cosine(v, v) == pytest.approx(1.0)

    def test_disjoint_supports(self):
        assert cosine({"a": 1.0}, {"b": 2.0}) == 0.0

    def test_half_overlap(self):
        assert cosine({"a": 1.0, "b": 1.0}, {"a": 1.0, "c": 1.0}) == pytest.approx(0.5)

    def test_zero_vector_convention(self):
        assert cosine({}, {"a": 1.0}) == 0.0

    def test_symmetry_and_scale_invariance(self):
        q = {"a": 0.3, "b": 1.1}
        d = {"a": 0.7, "c": 0.2}
        assert cosine(q, d) == pytest.approx(cosine(d, q))
        scaled = {t: 7.0 * w for t, w in d.items()}
        assert cosine(q, scaled) == pytest.approx(cosine(q, d))


class TestSetSimilarity:
    def test_identical_sets(self):
        s = {"a", "b", "c"}
        assert set_similarity("matching", s, s) == 3.0
        assert set_similarity("dice", s, s) == 1.0
        assert set_similarity("overlap", s, s) == 1.0
        assert set_similarity("jaccard", s, s) == 1.0

    def test_disjoint_sets(self):
        q, d = {"a"}, {"b"}
        for metric in ("matching", "dice", "overlap", "jaccard"):
            assert set_similarity(metric, q, d) == 0.0

    def test_partial_overlap(self):
        q, d = {"a", "b", "c"}, {"b", "c", "d"}
        assert set_similarity("matching", q, d) == 2.0
        assert set_similarity("dice", q, d) == pytest.approx(2 / 3)
        assert set_similarity("overlap", q, d) == pytest.approx(2 / 3)
        assert set_similarity("jaccard", q, d) == pytest.approx(0.5)

    def test_overlap_empty_set_rejected(self):
        with pytest.raises(ValueError):
            set_similarity("overlap", set(), {"a"})


class TestYearBoost:
    def _matches(self):
        return [RankedMatch("10.1/a", "Study Allbus 2000", 0.6, 1),
                RankedMatch("10.1/b", "Allbus 2014", 0.5, 2)]

    def test_matching_year_flips_order(self):
        boosted = year_boost("study allbus 2014", self._matches())
        assert boosted[0].title == "Allbus 2014"
        assert boosted[0].score == pytest.approx(0.75)

    def test_no_year_keeps_order(self):
        boosted = year_boost("study allbus heute", self._matches())
        assert [m.title for m in boosted] == ["Study Allbus 2000", "Allbus 2014"]
        assert [m.score for m in boosted] == [0.6, 0.5]

    def test_uniform_boost_keeps_order(self):
        matches = [RankedMatch("10.1/a", "Allbus 2014 alt", 0.6, 1),
                   RankedMatch("10.1/b", "Allbus 2014 neu", 0.5, 2)]
        boosted = year_boost("allbus 2014", matches)
        assert [m.doi for m in boosted] == ["10.1/a", "10.1/b"]

    def test_boost_preserves_candidate_set(self):
        boosted = year_boost("allbus 2014", self._matches())
        assert {m.doi for m in boosted} == {"10.1/a", "10.1/b"}


class TestRankCandidates:
    def test_geographic_term_discriminates(self, small_index):
        feature = Feature("PIAAC", "abbreviation")
        article = ArticleText("a1", "We study skills. The PIAAC data for Germany are rich.")
        ref = ReferenceCandidate("a1", "The PIAAC data for Germany are rich.",
                                 (16, 53), feature, 0,
                                 "The PIAAC data for Germany are rich.")
        matches = rank_candidates(ref, small_index, article)
        assert matches[0].doi == "10.4232/piaac-de"
        assert len(matches) == 2

    def test_single_matching_title(self):
        index = RegistryIndex.build([DatasetRecord("10.1/x", "Allbus 2014")])
        article = ArticleText("a1", "Wir nutzen den Allbus hier.")
        matches = rank_candidates(_ref("Wir nutzen den Allbus hier."), index, article)
        assert len(matches) == 1 and matches[0].rank == 1

    def test_truncated_to_five(self):
        records = [DatasetRecord(f"10.1/r{i:03d}", f"Allbus Welle {1900 + i}")
                   for i in range(150)]
        index = RegistryIndex.build(records)
        article = ArticleText("a1", "Der Allbus 1950 wird genutzt.")
        matches = rank_candidates(_ref("Der Allbus 1950 wird genutzt."), index, article)
        assert len(matches) == 5
        assert [m.rank for m in matches] == [1, 2, 3, 4, 5]

    def test_no_matching_title_empty(self):
        index = RegistryIndex.build([DatasetRecord("10.1/x", "Eurobarometer 1999")])
        article = ArticleText("a1", "Der Allbus wird genutzt.")
        assert rank_candidates(_ref("Der Allbus wird genutzt."), index, article) == []

    def test_all_results_contain_feature(self):
        records = [DatasetRecord(f"10.1/r{i}", t) for i, t in enumerate(
            ["Allbus 2000", "Allbus 2014", "Eurobarometer 2014", "PIAAC Germany"])]
        index = RegistryIndex.build(records)
        article = ArticleText("a1", "Der Allbus 2014 wird genutzt.")
        from dataref.detector import match_feature
        for m in rank_candidates(_ref("Der Allbus 2014 wird genutzt."), index, article):
            assert match_feature(m.title, ALLBUS)


class TestAggregate:
    def test_single_reference_passthrough(self):
        matches = [RankedMatch("10.1/a", "Allbus 2000", 0.9, 1),
                   RankedMatch("10.1/b", "Allbus 2014", 0.4, 2)]
        groups = aggregate_per_feature([(_ref("seg"), matches)])
        (key, out), = groups.items()
        assert key == ("abbreviation", "Allbus")
        assert [m.doi for m in out] == ["10.1/a", "10.1/b"]
        assert [m.score for m in out] == [1.0, 1.0]

    def test_count_across_ten_references(self):
        pairs = []
        for i in range(10):
            matches = [RankedMatch("10.1/x", "Allbus 2014", 0.9, 1),
                       RankedMatch(f"10.1/r{i}", f"Allbus {2000 + i}", 0.5, 2)]
            pairs.append((_ref(f"seg {i}"), matches))
        out = aggregate_per_feature(pairs)[("abbreviation", "Allbus")]
        assert out[0].doi == "10.1/x"
        assert out[0].score == 10.0
        assert len(out) == 6

    def test_three_features_three_groups(self):
        features = [Feature("ALLBUS", "abbreviation"), Feature("PIAAC", "abbreviation"),
                    Feature("exit poll", "phrase")]
        pairs = [(_ref("seg", feature=f), [RankedMatch("10.1/a", "T", 0.5, 1)])
                 for f in features]
        assert len(aggregate_per_feature(pairs)) == 3


# ---- randomized oracle comparisons --------------------------------------

_term = st.sampled_from([f"t{i}" for i in range(30)])
_doc = st.lists(_term, min_size=1, max_size=12)
_docs = st.lists(_doc, min_size=1, max_size=20)


@settings(max_examples=200, deadline=None)
@given(docs=_docs, query=_doc, pick=st.integers(min_value=0, max_value=10 ** 6))
def test_tfidf_score_matches_oracle(docs, query, pick):
    corpus = RankingCorpus.build([(f"d{i}", " ".join(d)) for i, d in enumerate(docs)])
    doc = docs[pick % len(docs)]
    ours = tfidf_score(" ".join(query), " ".join(doc), corpus)
    expected = oracles.brute_tfidf_score(query, doc, docs)
    assert ours == pytest.approx(expected, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(docs=_docs, query=_doc, pick=st.integers(min_value=0, max_value=10 ** 6))
def test_cosine_over_tfidf_matches_oracle(docs, query, pick):
    corpus = RankingCorpus.build([(f"d{i}", " ".join(d)) for i, d in enumerate(docs)])
    doc = docs[pick % len(docs)]
    ours = cosine(weight_vector(" ".join(query), corpus),
                  weight_vector(" ".join(doc), corpus))
    vocabulary = sorted({t for d in docs for t in d} | set(query))
    expected = oracles.brute_cosine(
        oracles.brute_weight_vector(query, docs, vocabulary),
        oracles.brute_weight_vector(doc, docs, vocabulary))
    assert ours == pytest.approx(expected, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(q=st.sets(_term, max_size=15), d=st.sets(_term, max_size=15))
def test_set_similarities_match_oracle(q, d):
    assert set_similarity("matching", q, d) == oracles.brute_matching(q, d)
    assert set_similarity("dice", q, d) == pytest.approx(oracles.brute_dice(q, d), abs=1e-9)
    assert set_similarity("jaccard", q, d) == pytest.approx(oracles.brute_jaccard(q, d), abs=1e-9)
    if q and d:
        assert set_similarity("overlap", q, d) == pytest.approx(
            oracles.brute_overlap(q, d), abs=1e-9)
