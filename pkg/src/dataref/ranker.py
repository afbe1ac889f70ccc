"""tf-idf / cosine ranking of candidate dataset titles for a reference.

The corpus for one reference is deliberately small: every sentence of the
article plus every registry title containing the reference's feature. That
keeps idf meaningful while restricting candidates to related titles.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .detector import ArticleText, ReferenceCandidate, split_sentences
from .dictionary import Feature
from .registry import RegistryIndex
from .tokenization import extract_years, terms


@dataclass
class RankerConfig:
    year_boost_factor: float = 1.5
    top_k_reference: int = 5
    top_k_feature: int = 6
    score_threshold: float = 0.0

    @classmethod
    def from_file(cls, path) -> "RankerConfig":
        with open(path, encoding="utf-8") as fh:
            return cls(**json.load(fh))


DEFAULT_CONFIG = RankerConfig()


def tf_weight(count: int) -> float:
    """Log-dampened term frequency: 0 for absent terms, 1 + log10 otherwise."""
    if count < 0:
        raise ValueError("term count must be non-negative")
    if count == 0:
        return 0.0
    return 1.0 + math.log10(count)


def idf(n_docs: int, df: int) -> float:
    """Inverse document frequency log10(N/df); requires 1 <= df <= N."""
    if df < 1 or df > n_docs:
        raise ValueError(f"df must be in [1, N]; got df={df}, N={n_docs}")
    return math.log10(n_docs / df)


@dataclass
class RankingCorpus:
    documents: list[tuple[str, str]]
    n_docs: int
    df: dict[str, int]

    @classmethod
    def build(cls, documents: list[tuple[str, str]]) -> "RankingCorpus":
        df: Counter = Counter()
        for _, text in documents:
            df.update(set(terms(text)))
        return cls(documents=list(documents), n_docs=len(documents), df=dict(df))

    def idf(self, term: str) -> float:
        # Unseen terms fall back to df=1 (maximal idf, no division by zero).
        return idf(self.n_docs, self.df.get(term, 1))


def weight_vector(text: str, corpus: RankingCorpus) -> dict[str, float]:
    """Sparse tf-idf vector; zero weights are not stored."""
    vec = {}
    for term, count in Counter(terms(text)).items():
        w = tf_weight(count) * corpus.idf(term)
        if w != 0.0:
            vec[term] = w
    return vec


def tfidf_score(query: str, doc: str, corpus: RankingCorpus) -> float:
    """Sum of tf-idf weights of doc terms shared with the query."""
    doc_counts = Counter(terms(doc))
    shared = set(terms(query)) & set(doc_counts)
    return sum(tf_weight(doc_counts[t]) * corpus.idf(t) for t in shared)


def cosine(q: dict[str, float], d: dict[str, float]) -> float:
    """Cosine of the angle between sparse vectors; 0 if either is all-zero."""
    nq = math.sqrt(sum(w * w for w in q.values()))
    nd = math.sqrt(sum(w * w for w in d.values()))
    if nq == 0.0 or nd == 0.0:
        return 0.0
    if len(q) > len(d):
        q, d = d, q
    dot = sum(w * d[t] for t, w in q.items() if t in d)
    return dot / (nq * nd)


def set_similarity(metric: str, q: set, d: set) -> float:
    inter = len(q & d)
    if metric == "matching":
        return float(inter)
    if metric == "dice":
        total = len(q) + len(d)
        return 2.0 * inter / total if total else 0.0
    if metric == "overlap":
        if not q or not d:
            raise ValueError("overlap coefficient requires non-empty sets")
        return inter / min(len(q), len(d))
    if metric == "jaccard":
        union = len(q | d)
        return inter / union if union else 0.0
    raise ValueError(f"unknown similarity metric {metric!r}")


@dataclass(frozen=True)
class RankedMatch:
    doi: str
    title: str
    score: float
    rank: int


@dataclass
class _Scored:
    doi: str
    title: str
    score: float
    year_matched: bool = False


def year_boost(segment: str, matches: list[RankedMatch],
               factor: float = DEFAULT_CONFIG.year_boost_factor) -> list[RankedMatch]:
    """Boost matches whose title shares a 4-digit year with the segment."""
    years = extract_years(segment)
    scored = []
    for m in matches:
        hit = bool(years & extract_years(m.title))
        scored.append(_Scored(m.doi, m.title, m.score * factor if hit else m.score, hit))
    scored.sort(key=lambda s: -s.score)  # stable: equal boosts keep their order
    return [RankedMatch(s.doi, s.title, s.score, i + 1) for i, s in enumerate(scored)]


def rank_candidates(ref: ReferenceCandidate, index: RegistryIndex, article: ArticleText,
                    config: RankerConfig = DEFAULT_CONFIG) -> list[RankedMatch]:
    """Top candidates for one reference: cosine over tf-idf, year-boosted."""
    records = index.titles_containing(ref.feature)
    if not records:
        return []
    sentences = [s for s, _ in split_sentences(article.fulltext)]
    documents = [(f"sent:{i}", s) for i, s in enumerate(sentences)]
    documents += [(r.doi, r.title) for r in records]
    corpus = RankingCorpus.build(documents)

    query = weight_vector(ref.segment, corpus)
    seg_years = extract_years(ref.segment)
    scored = []
    for record in records:
        score = cosine(query, weight_vector(record.title, corpus))
        hit = bool(seg_years & extract_years(record.title))
        boosted = score * config.year_boost_factor if hit else score
        scored.append(_Scored(record.doi, record.title, boosted, hit))
    if config.score_threshold > 0:
        scored = [s for s in scored if s.score >= config.score_threshold]
    scored.sort(key=lambda s: (-s.score, not s.year_matched, s.doi))
    top = scored[: config.top_k_reference]
    return [RankedMatch(s.doi, s.title, s.score, i + 1) for i, s in enumerate(top)]


def aggregate_per_feature(refs_with_top5: list[tuple[ReferenceCandidate, list[RankedMatch]]],
                          config: RankerConfig = DEFAULT_CONFIG,
                          ) -> dict[tuple[str, str], list[RankedMatch]]:
    """Per-feature candidate lists: DOIs ranked by occurrence count across refs."""
    groups: dict[tuple[str, str], list[list[RankedMatch]]] = {}
    for ref, matches in refs_with_top5:
        groups.setdefault(ref.feature.key(), []).append(matches)
    out: dict[tuple[str, str], list[RankedMatch]] = {}
    for key, match_lists in groups.items():
        counts: Counter = Counter()
        best_rank: dict[str, int] = {}
        titles: dict[str, str] = {}
        for matches in match_lists:
            for m in matches:
                counts[m.doi] += 1
                titles[m.doi] = m.title
                best_rank[m.doi] = min(best_rank.get(m.doi, m.rank), m.rank)
        ordered = sorted(counts, key=lambda doi: (-counts[doi], best_rank[doi], doi))
        out[key] = [RankedMatch(doi, titles[doi], float(counts[doi]), i + 1)
                    for i, doi in enumerate(ordered[: config.top_k_feature])]
    return out
