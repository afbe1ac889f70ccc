"""Sentence splitting and in-text feature matching."""

from __future__ import annotations

from dataclasses import dataclass

from .dictionary import Feature, FeatureDictionary

# Common German/English abbreviations that never end a sentence.
SENTENCE_ABBREVIATIONS = (
    "z.B.", "z. B.", "bzw.", "bspw.", "ca.", "u.a.", "u. a.", "vgl.", "Abs.",
    "Nr.", "Tab.", "Abb.", "e.g.", "i.e.", "cf.", "Dr.", "Prof.", "vs.",
    "et al.", "etc.", "resp.", "Jg.", "Aufl.", "St.",
)

_TERMINATORS = ".!?"
_CLOSERS = ")\"'»«“”]"


@dataclass(frozen=True)
class ArticleText:
    article_id: str
    fulltext: str
    language: str | None = None

    def __post_init__(self):
        if not self.fulltext:
            raise ValueError("article fulltext must be non-empty")


@dataclass(frozen=True)
class ReferenceCandidate:
    article_id: str
    sentence: str
    span: tuple[int, int]
    feature: Feature
    segment_index: int
    segment: str

    def __post_init__(self):
        if self.segment_index < 0:
            raise ValueError("segment_index must be >= 0")


def _ends_with_abbreviation(text: str, dot_index: int) -> bool:
    head = text[: dot_index + 1]
    return any(head.endswith(abbrev) for abbrev in SENTENCE_ABBREVIATIONS)


def split_sentences(fulltext: str) -> list[tuple[str, tuple[int, int]]]:
    """Split on {. ! ?} + whitespace + uppercase/digit, outside parentheses."""
    boundaries = []
    depth = 0
    i = 0
    n = len(fulltext)
    while i < n:
        c = fulltext[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth = max(0, depth - 1)
        elif c in _TERMINATORS and depth == 0:
            j = i + 1
            while j < n and fulltext[j] in _CLOSERS:
                j += 1
            if j < n and fulltext[j].isspace():
                k = j
                while k < n and fulltext[k].isspace():
                    k += 1
                if k < n and (fulltext[k].isupper() or fulltext[k].isdigit()):
                    if not (c == "." and _ends_with_abbreviation(fulltext, i)):
                        boundaries.append((j, k))
                        i = k
                        continue
        i += 1

    sentences = []
    start = 0
    for end, next_start in boundaries:
        sentence = fulltext[start:end]
        if sentence.strip():
            sentences.append((sentence, (start, end)))
        start = next_start
    tail = fulltext[start:]
    stripped = tail.rstrip()
    if stripped:
        sentences.append((stripped, (start, start + len(stripped))))
    return sentences


def _is_boundary(text: str, start: int, end: int) -> bool:
    before_ok = start == 0 or not text[start - 1].isalnum()
    after_ok = end >= len(text) or not text[end].isalnum()
    return before_ok and after_ok


def match_feature(sentence: str, feature: Feature) -> list[int]:
    """Offsets of all matches; abbreviations case-sensitive, phrases folded."""
    if feature.kind == "abbreviation":
        haystack, needle = sentence, feature.text
    else:
        haystack, needle = sentence.lower(), feature.text.lower()
    offsets = []
    pos = haystack.find(needle)
    while pos != -1:
        if _is_boundary(sentence, pos, pos + len(needle)):
            offsets.append(pos)
        pos = haystack.find(needle, pos + 1)
    return offsets


def find_references(article: ArticleText, dictionary: FeatureDictionary) -> list[ReferenceCandidate]:
    """One candidate per feature occurrence cluster, splitting repeated hits.

    A sentence with k>1 occurrences of a feature is cut at the midpoints
    between consecutive matches so each segment keeps its local context.
    """
    out = []
    for sentence, (s0, s1) in split_sentences(article.fulltext):
        for feature in dictionary.features():
            offsets = match_feature(sentence, feature)
            if not offsets:
                continue
            flen = len(feature.text)
            cuts = [s0]
            for a, b in zip(offsets, offsets[1:]):
                cuts.append(s0 + (a + flen + b) // 2)
            cuts.append(s1)
            for idx in range(len(offsets)):
                seg_start, seg_end = cuts[idx], cuts[idx + 1]
                out.append(ReferenceCandidate(
                    article_id=article.article_id,
                    sentence=sentence,
                    span=(seg_start, seg_end),
                    feature=feature,
                    segment_index=idx if len(offsets) > 1 else 0,
                    segment=article.fulltext[seg_start:seg_end],
                ))
    out.sort(key=lambda c: (c.span, c.segment_index, c.feature.kind, c.feature.text))
    return out
