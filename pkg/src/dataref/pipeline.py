"""Glue that chains detection, ranking and export for one article."""

from __future__ import annotations

from .detector import ArticleText, ReferenceCandidate, find_references
from .dictionary import FeatureDictionary
from .exporter import ArticleMetadata, Link, LinkSet
from .ranker import (DEFAULT_CONFIG, RankedMatch, RankerConfig,
                     aggregate_per_feature, rank_candidates)
from .registry import RegistryIndex


def rank_article(article: ArticleText, dictionary: FeatureDictionary,
                 index: RegistryIndex, config: RankerConfig = DEFAULT_CONFIG,
                 ) -> list[tuple[ReferenceCandidate, list[RankedMatch]]]:
    """Per-reference top-k candidate lists for every detected reference."""
    refs = find_references(article, dictionary)
    return [(ref, rank_candidates(ref, index, article, config)) for ref in refs]


def feature_groups(ranked: list[tuple[ReferenceCandidate, list[RankedMatch]]],
                   config: RankerConfig = DEFAULT_CONFIG,
                   ) -> dict[tuple[str, str], list[RankedMatch]]:
    return aggregate_per_feature(ranked, config)


def build_linkset(article_meta: ArticleMetadata,
                  groups: dict[tuple[str, str], list[RankedMatch]],
                  confirmed_dois: set[str] | None = None) -> LinkSet:
    """All per-feature candidates, with user-confirmed DOIs marked as such."""
    confirmed_dois = confirmed_dois or set()
    links: dict[str, Link] = {}
    for (kind, text), matches in sorted(groups.items()):
        for m in matches:
            if m.doi in links:
                continue
            status = "confirmed" if m.doi in confirmed_dois else "candidate"
            links[m.doi] = Link(doi=m.doi, title=m.title, status=status,
                                feature=text, occurrence_count=int(m.score))
    return LinkSet(article=article_meta, links=tuple(links.values()))
