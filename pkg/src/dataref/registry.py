"""Dataset registry snapshots and the title lookup index."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .tokenization import first_year

RESOURCE_TYPES = ("dataset", "text", "collection", "video", "interactive")

# Index tokens: split on whitespace plus a small punctuation set, case kept.
_INDEX_SPLIT = re.compile(r"[\s:,;()\[\]]+")


class SnapshotError(ValueError):
    """Raised when a snapshot line cannot be parsed."""


@dataclass(frozen=True)
class DatasetRecord:
    doi: str
    title: str
    year: int | None = None
    language: str | None = None
    publisher: str | None = None
    resource_type: str = "dataset"

    def __post_init__(self):
        if not self.doi:
            raise ValueError("record DOI must be non-empty")
        if not self.title.strip():
            raise ValueError(f"record {self.doi}: title must be non-empty")
        if self.resource_type not in RESOURCE_TYPES:
            raise ValueError(f"record {self.doi}: unknown resource type {self.resource_type!r}")

    def to_json(self) -> str:
        obj = {"doi": self.doi, "title": self.title}
        for key in ("year", "language", "publisher"):
            value = getattr(self, key)
            if value is not None:
                obj[key] = value
        obj["resource_type"] = self.resource_type
        return json.dumps(obj, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "DatasetRecord":
        obj = json.loads(line)
        return cls(
            doi=obj["doi"],
            title=obj["title"],
            year=obj.get("year"),
            language=obj.get("language"),
            publisher=obj.get("publisher"),
            resource_type=obj.get("resource_type", "dataset"),
        )


def index_tokens(title: str) -> list[str]:
    return [t for t in _INDEX_SPLIT.split(title) if t]


@dataclass
class RegistryIndex:
    """Immutable-after-construction index over dataset records."""

    records: dict[str, DatasetRecord] = field(default_factory=dict)
    title_token_index: dict[str, set[str]] = field(default_factory=dict)
    duplicate_count: int = 0

    @classmethod
    def build(cls, records, duplicate_count: int = 0) -> "RegistryIndex":
        index = cls(duplicate_count=duplicate_count)
        for record in records:
            if record.doi in index.records:
                index.duplicate_count += 1
            index.records[record.doi] = record
        for record in index.records.values():
            for token in index_tokens(record.title):
                index.title_token_index.setdefault(token, set()).add(record.doi)
        return index

    def __len__(self) -> int:
        return len(self.records)

    def titles_containing(self, feature) -> list[DatasetRecord]:
        """Records whose title matches *feature* under the detector rules.

        The token index narrows the scan to titles sharing a token with the
        feature's first term; every candidate is confirmed with the full
        matching rules, so the result equals a brute-force filter.
        """
        from .detector import match_feature

        probe = feature.text.split()[0].casefold()
        candidates: set[str] = set()
        for token, dois in self.title_token_index.items():
            if probe in token.casefold():
                candidates.update(dois)
        out = []
        for doi in sorted(candidates):
            record = self.records[doi]
            if match_feature(record.title, feature):
                out.append(record)
        return out


def titles_containing(index: RegistryIndex, feature) -> list[DatasetRecord]:
    return index.titles_containing(feature)


def record_from_metadata(doi: str, title: str, year=None, language=None,
                         publisher=None, resource_type="dataset") -> DatasetRecord:
    """Build a record, falling back to the first 4-digit title token for the year."""
    if year is None:
        year = first_year(title)
    return DatasetRecord(doi=doi, title=title.strip(), year=year, language=language,
                         publisher=publisher, resource_type=resource_type)


def write_snapshot(records, path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.to_json() + "\n")
            count += 1
    return count


def load_snapshot(path) -> RegistryIndex:
    """Load a `.jsonl` snapshot; duplicate DOIs are last-wins and counted."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(DatasetRecord.from_json(line))
            except (ValueError, KeyError) as exc:
                raise SnapshotError(f"{path}: line {lineno}: {exc}") from exc
    return RegistryIndex.build(records)
