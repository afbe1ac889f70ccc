"""RDF (N-Triples, Turtle) and JSON export of article-to-dataset links.

IRI scheme (pinned, bit-exact):
  article resource   https://doi.org/<doi>  or the urn: PID verbatim
  dataset resource   https://doi.org/<doi>
  reference          http://purl.org/spar/cito/citesAsDataSource
  dataset title      http://purl.org/dc/terms/title
  link status        https://w3id.org/dataref#status
  article type       http://purl.org/spar/fabio/ScholarlyWork
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
ARTICLE_CLASS = "http://purl.org/spar/fabio/ScholarlyWork"
CITES_DATASET = "http://purl.org/spar/cito/citesAsDataSource"
DCT_TITLE = "http://purl.org/dc/terms/title"
DCT_PART_OF = "http://purl.org/dc/terms/isPartOf"
STATUS = "https://w3id.org/dataref#status"

LINK_STATUSES = ("confirmed", "candidate")


@dataclass(frozen=True)
class ArticleMetadata:
    article_id: str
    pid: str
    title: str | None = None
    journal: str | None = None

    def __post_init__(self):
        if not self.pid:
            raise ValueError("article PID must be non-empty")
        if not (self.pid.startswith("doi:") or self.pid.startswith("urn:")):
            raise ValueError(f"PID scheme must be doi: or urn:, got {self.pid!r}")

    @property
    def iri(self) -> str:
        if self.pid.startswith("doi:"):
            return "https://doi.org/" + self.pid[len("doi:"):]
        return self.pid


@dataclass(frozen=True)
class Link:
    doi: str
    title: str
    status: str
    feature: str
    occurrence_count: int = 1

    def __post_init__(self):
        if self.status not in LINK_STATUSES:
            raise ValueError(f"unknown link status {self.status!r}")

    @property
    def iri(self) -> str:
        return "https://doi.org/" + self.doi


@dataclass(frozen=True)
class LinkSet:
    article: ArticleMetadata
    links: tuple[Link, ...] = ()

    def __post_init__(self):
        dois = [l.doi for l in self.links]
        if len(dois) != len(set(dois)):
            raise ValueError("link DOIs must be unique within a link set")


def _escape(value: str) -> str:
    return (value.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


def triples(linkset: LinkSet) -> list[tuple[str, str, str]]:
    """(subject IRI, predicate IRI, object) where a literal object starts with '\"'."""
    article = linkset.article.iri
    out = [(article, RDF_TYPE, f"<{ARTICLE_CLASS}>")]
    if linkset.article.title:
        out.append((article, DCT_TITLE, f'"{_escape(linkset.article.title)}"'))
    if linkset.article.journal:
        out.append((article, DCT_PART_OF, f'"{_escape(linkset.article.journal)}"'))
    for link in linkset.links:
        out.append((article, CITES_DATASET, f"<{link.iri}>"))
        out.append((link.iri, DCT_TITLE, f'"{_escape(link.title)}"'))
        out.append((link.iri, STATUS, f'"{link.status}"'))
    return sorted(out)


def preamble_size(linkset: LinkSet) -> int:
    return 1 + bool(linkset.article.title) + bool(linkset.article.journal)


def export_ntriples(linkset: LinkSet) -> str:
    lines = [f"<{s}> <{p}> {o} ." for s, p, o in triples(linkset)]
    return "\n".join(lines) + "\n" if lines else ""


_PREFIXES = {
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#": "rdf",
    "http://purl.org/spar/cito/": "cito",
    "http://purl.org/spar/fabio/": "fabio",
    "http://purl.org/dc/terms/": "dcterms",
    "https://w3id.org/dataref#": "dataref",
}


def _curie(iri: str) -> str:
    for ns, prefix in _PREFIXES.items():
        if iri.startswith(ns):
            return f"{prefix}:{iri[len(ns):]}"
    return f"<{iri}>"


def export_turtle(linkset: LinkSet) -> str:
    lines = [f"@prefix {p}: <{ns}> ." for ns, p in sorted(_PREFIXES.items(), key=lambda x: x[1])]
    lines.append("")
    for s, p, o in triples(linkset):
        obj = _curie(o[1:-1]) if o.startswith("<") else o
        pred = "a" if p == RDF_TYPE else _curie(p)
        lines.append(f"<{s}> {pred} {obj} .")
    return "\n".join(lines) + "\n"


def export_json(linkset: LinkSet) -> str:
    obj = {
        "article": {
            "article_id": linkset.article.article_id,
            "pid": linkset.article.pid,
            "title": linkset.article.title,
            "journal": linkset.article.journal,
        },
        "links": [
            {
                "doi": l.doi,
                "title": l.title,
                "status": l.status,
                "feature": l.feature,
                "occurrence_count": l.occurrence_count,
            }
            for l in linkset.links
        ],
    }
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def import_json(text: str) -> LinkSet:
    obj = json.loads(text)
    article = ArticleMetadata(
        article_id=obj["article"]["article_id"],
        pid=obj["article"]["pid"],
        title=obj["article"].get("title"),
        journal=obj["article"].get("journal"),
    )
    links = tuple(
        Link(doi=l["doi"], title=l["title"], status=l["status"],
             feature=l["feature"], occurrence_count=l.get("occurrence_count", 1))
        for l in obj.get("links", [])
    )
    return LinkSet(article=article, links=links)
