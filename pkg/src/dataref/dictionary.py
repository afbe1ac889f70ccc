"""Feature dictionaries: abbreviation and phrase extraction from dataset titles.

Abbreviations come out of a six-rule cascade over mixed-case titles plus a
separate pass over all-caps titles; phrases are built around a curated list
of base terms ("Study", "Survey", "Poll", ...). Both lists are meant to be
pruned by an expert through the false-positive lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from importlib import resources as importlib_resources
from pathlib import Path

from .tokenization import ABBREV_PUNCT, is_roman_numeral, tokenize, tokenize_with_spans

MIN_ABBREV_LEN = 2

KINDS = ("abbreviation", "phrase")

_FILENAME_TOKEN = re.compile(r"^\S+\.[A-Za-z]{2,4}$")
_RULE3_SPLIT = re.compile(r"[-(]")


@dataclass(frozen=True)
class Feature:
    text: str
    kind: str
    source_titles: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.text:
            raise ValueError("feature text must be non-empty")
        if self.kind not in KINDS:
            raise ValueError(f"unknown feature kind {self.kind!r}")
        if self.kind == "abbreviation":
            bad = {c for c in self.text if not c.isalnum() and c not in ABBREV_PUNCT}
            if bad:
                raise ValueError(f"abbreviation {self.text!r} carries punctuation {bad}")

    def key(self) -> tuple[str, str]:
        """Identity used for matching/grouping: phrases compare case-folded."""
        text = self.text if self.kind == "abbreviation" else self.text.casefold()
        return (self.kind, text)


@dataclass(frozen=True)
class Wordlists:
    english: frozenset[str]
    german: frozenset[str]
    countries: frozenset[str]
    stopwords: frozenset[str]

    @property
    def words(self) -> frozenset[str]:
        return self.english | self.german | self.countries


def _load_resource(name: str) -> frozenset[str]:
    text = importlib_resources.files("dataref.resources").joinpath(name).read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_wordlists() -> Wordlists:
    return Wordlists(
        english=_load_resource("english.txt"),
        german=_load_resource("german.txt"),
        countries=_load_resource("countries.txt"),
        stopwords=_load_resource("stopwords_en.txt") | _load_resource("stopwords_de.txt"),
    )


def load_base_terms() -> frozenset[str]:
    return _load_resource("base_terms.txt")


@dataclass(frozen=True)
class FeatureDictionary:
    abbreviations: frozenset[Feature] = frozenset()
    phrases: frozenset[Feature] = frozenset()
    fp_abbreviations: frozenset[str] = frozenset()
    fp_phrases: frozenset[str] = frozenset()
    base_terms: frozenset[str] = frozenset()

    def __post_init__(self):
        live_abbrev = {f.text for f in self.abbreviations}
        live_phrase = {f.text.casefold() for f in self.phrases}
        if live_abbrev & self.fp_abbreviations:
            raise ValueError("abbreviations overlap their false-positive list")
        if live_phrase & {p.casefold() for p in self.fp_phrases}:
            raise ValueError("phrases overlap their false-positive list")
        if any(term != term.lower() for term in self.base_terms):
            raise ValueError("base terms must be lowercase")

    def features(self) -> list[Feature]:
        """All live features in a deterministic order."""
        return sorted(self.abbreviations | self.phrases, key=lambda f: (f.kind, f.text))

    def save(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        files = {
            "abbreviations.txt": sorted(f.text for f in self.abbreviations),
            "phrases.txt": sorted(f.text for f in self.phrases),
            "fp_abbreviations.txt": sorted(self.fp_abbreviations),
            "fp_phrases.txt": sorted(self.fp_phrases),
            "base_terms.txt": sorted(self.base_terms),
        }
        for name, lines in files.items():
            (directory / name).write_text("\n".join(lines) + ("\n" if lines else ""), "utf-8")

    @classmethod
    def load(cls, directory) -> "FeatureDictionary":
        directory = Path(directory)

        def read(name):
            path = directory / name
            if not path.exists():
                return []
            return [l.strip() for l in path.read_text("utf-8").splitlines() if l.strip()]

        return cls(
            abbreviations=frozenset(Feature(t, "abbreviation") for t in read("abbreviations.txt")),
            phrases=frozenset(Feature(t, "phrase") for t in read("phrases.txt")),
            fp_abbreviations=frozenset(read("fp_abbreviations.txt")),
            fp_phrases=frozenset(read("fp_phrases.txt")),
            base_terms=frozenset(read("base_terms.txt")),
        )


def preprocess_titles(titles: list[str]) -> tuple[list[str], list[str]]:
    """Split titles into mixed-case (colon-truncated) and all-caps groups."""
    mixed, allcaps = [], []
    for title in titles:
        cased = [c for c in title if c.isalpha()]
        if cased and all(c.isupper() for c in cased):
            allcaps.append(title)
        else:
            head = title.split(":", 1)[0].strip()
            if head:
                mixed.append(head)
    return mixed, allcaps


def _rule2_keeps(token: str) -> bool:
    rest = token[1:]
    if not any(c.isupper() for c in rest):
        return False
    if not any(c.isalpha() for c in token):
        return False
    if is_roman_numeral(token):
        return False
    if token[0].isdigit():
        return False
    return True


def _rule4_keeps(candidate: str) -> bool:
    return all(c.isalnum() or c in ABBREV_PUNCT for c in candidate)


def _rule5_keeps(candidate: str) -> bool:
    if "/" not in candidate and "-" not in candidate:
        return True
    for part in re.split(r"[/-]", candidate):
        if any(c.islower() for c in part[1:]):
            return False
    return True


def _rule6_keeps(candidate: str, wordlists: Wordlists) -> bool:
    if any(c.isupper() for c in candidate[1:]):
        return True  # fully/partially capitalized beyond the first letter
    return candidate.casefold() not in wordlists.words


def _collect(features: dict[str, set[str]], text: str, source: str | None):
    sources = features.setdefault(text, set())
    if source is not None:
        sources.add(source)


def extract_abbreviations(titles: list[str], wordlists: Wordlists,
                          ids: list[str] | None = None) -> list[Feature]:
    """Six-rule abbreviation extraction over preprocessed mixed-case titles."""
    found: dict[str, set[str]] = {}
    for pos, title in enumerate(titles):
        source = ids[pos] if ids else None
        candidates = []
        for token in tokenize(title):  # rules 1-2
            if _rule2_keeps(token):
                candidates.append(token)
        # rule 3: single tokens that make up a whole segment before '-' or '('
        segments = _RULE3_SPLIT.split(title)
        for segment in segments[:-1]:
            segment = segment.strip()
            if segment and len(segment.split()) == 1:
                candidates.append(segment)
        for cand in candidates:  # rules 4-6 + minimum length
            if len(cand) < MIN_ABBREV_LEN:
                continue
            if not _rule4_keeps(cand):
                continue
            if not _rule5_keeps(cand):
                continue
            if not _rule6_keeps(cand, wordlists):
                continue
            _collect(found, cand, source)
    return [Feature(text, "abbreviation", frozenset(sources))
            for text, sources in sorted(found.items())]


def extract_allcaps_tokens(allcaps_titles: list[str], wordlists: Wordlists,
                           ids: list[str] | None = None) -> list[Feature]:
    """Tokens of all-caps titles that have no wordlist definition."""
    found: dict[str, set[str]] = {}
    for pos, title in enumerate(allcaps_titles):
        source = ids[pos] if ids else None
        for token in tokenize(title):
            lowered = token.lower()
            if len(token) < MIN_ABBREV_LEN:
                continue
            if not any(c.isalpha() for c in token):
                continue
            if lowered in wordlists.words:
                continue
            if not _rule4_keeps(token):
                continue
            _collect(found, token, source)
    return [Feature(text, "abbreviation", frozenset(sources))
            for text, sources in sorted(found.items())]


def extract_phrases(titles: list[str], base_terms: frozenset[str],
                    stopwords: frozenset[str], ids: list[str] | None = None) -> list[Feature]:
    """Phrases built around base terms: infix compounds, "X of Y", and pairs."""
    found: dict[str, set[str]] = {}
    seen_folded: dict[str, str] = {}

    def emit(text: str, source: str | None):
        folded = text.casefold()
        canonical = seen_folded.setdefault(folded, text)
        _collect(found, canonical, source)

    for pos, title in enumerate(titles):
        source = ids[pos] if ids else None
        toks = tokenize_with_spans(title)
        for i, (tok, start, end) in enumerate(toks):
            folded = tok.casefold()
            if any(c.isdigit() for c in tok):
                continue
            # type 1: base term as a strict infix of a single compound word
            if tok.isalpha() and any(base in folded and folded != base for base in base_terms):
                emit(title[start:end], source)
            # type 2: base term + "of" + one non-stopword token
            if (folded in base_terms and i + 2 < len(toks)
                    and toks[i + 1][0].casefold() == "of"):
                nxt, _, nxt_end = toks[i + 2]
                nf = nxt.casefold()
                if nf not in stopwords and nxt.isalpha():
                    emit(title[start:nxt_end], source)
            # type 3: two-token phrase, one side a base term, other a content word
            if i + 1 < len(toks):
                other, _, other_end = toks[i + 1]
                of = other.casefold()
                first_is_base = folded in base_terms
                second_is_base = of in base_terms
                if first_is_base != second_is_base:
                    content = other if first_is_base else tok
                    cf = content.casefold()
                    if cf not in stopwords and content.isalpha() and cf not in base_terms:
                        emit(title[start:other_end], source)
    return [Feature(text, "phrase", frozenset(sources))
            for text, sources in sorted(found.items())]


def build_dictionary(titles: list[str], wordlists: Wordlists | None = None,
                     base_terms: frozenset[str] | None = None,
                     ids: list[str] | None = None) -> FeatureDictionary:
    """Run the full Step-1 extraction over raw titles."""
    if wordlists is None:
        wordlists = load_wordlists()
    if base_terms is None:
        base_terms = load_base_terms()
    pairs = list(zip(ids, titles)) if ids else [(t, t) for t in titles]
    mixed_pairs, allcaps_pairs = [], []
    for source, title in pairs:
        m, a = preprocess_titles([title])
        mixed_pairs.extend((source, t) for t in m)
        allcaps_pairs.extend((source, t) for t in a)
    mixed_ids = [p[0] for p in mixed_pairs]
    mixed_titles = [p[1] for p in mixed_pairs]
    allcaps_ids = [p[0] for p in allcaps_pairs]
    allcaps_titles = [p[1] for p in allcaps_pairs]

    abbrevs: dict[str, set[str]] = {}
    for feat in extract_abbreviations(mixed_titles, wordlists, ids=mixed_ids):
        abbrevs.setdefault(feat.text, set()).update(feat.source_titles)
    for feat in extract_allcaps_tokens(allcaps_titles, wordlists, ids=allcaps_ids):
        abbrevs.setdefault(feat.text, set()).update(feat.source_titles)
    phrases = extract_phrases(mixed_titles, base_terms, wordlists.stopwords, ids=mixed_ids)
    return FeatureDictionary(
        abbreviations=frozenset(Feature(t, "abbreviation", frozenset(s))
                                for t, s in abbrevs.items()),
        phrases=frozenset(phrases),
        base_terms=base_terms,
    )


def apply_false_positives(dictionary: FeatureDictionary,
                          fp_additions: list[tuple[str, str]]) -> FeatureDictionary:
    """Move entries onto the appropriate false-positive list; idempotent."""
    fp_abbrev = set(dictionary.fp_abbreviations)
    fp_phrase = set(dictionary.fp_phrases)
    for text, kind in fp_additions:
        if kind == "abbreviation":
            fp_abbrev.add(text)
        elif kind == "phrase":
            fp_phrase.add(text)
        else:
            raise ValueError(f"unknown feature kind {kind!r}")
    folded_fp_phrase = {p.casefold() for p in fp_phrase}
    return replace(
        dictionary,
        abbreviations=frozenset(f for f in dictionary.abbreviations
                                if f.text not in fp_abbrev),
        phrases=frozenset(f for f in dictionary.phrases
                          if f.text.casefold() not in folded_fp_phrase),
        fp_abbreviations=frozenset(fp_abbrev),
        fp_phrases=frozenset(fp_phrase),
    )


def pattern_stats(titles: list[str], dictionary: FeatureDictionary) -> dict[str, float]:
    """Fraction of titles showing abbreviations, phrases, both, or filename tokens."""
    from .detector import match_feature

    if not titles:
        return {"abbrev_pct": 0.0, "phrase_pct": 0.0,
                "intersection_pct": 0.0, "filename_pct": 0.0}
    abbrev_hits = phrase_hits = both_hits = filename_hits = 0
    abbrevs = sorted(dictionary.abbreviations, key=lambda f: f.text)
    phrases = sorted(dictionary.phrases, key=lambda f: f.text)
    for title in titles:
        has_abbrev = any(match_feature(title, f) for f in abbrevs)
        has_phrase = any(match_feature(title, f) for f in phrases)
        abbrev_hits += has_abbrev
        phrase_hits += has_phrase
        both_hits += has_abbrev and has_phrase
        filename_hits += any(_FILENAME_TOKEN.match(tok) for tok in title.split())
    n = len(titles)
    return {
        "abbrev_pct": abbrev_hits / n,
        "phrase_pct": phrase_hits / n,
        "intersection_pct": both_hits / n,
        "filename_pct": filename_hits / n,
    }
