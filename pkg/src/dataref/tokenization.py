"""Shared tokenization helpers.

The dictionary rules and the ranker need slightly different token streams:
feature extraction keeps case and the punctuation whitelist, ranking folds
case and strips all edge punctuation.
"""

from __future__ import annotations

import re

# Punctuation allowed inside abbreviation candidates.
ABBREV_PUNCT = set(".-/*&")

_WS = re.compile(r"\S+")
_YEAR = re.compile(r"(?<!\d)(19\d{2}|20\d{2})(?!\d)")
_ROMAN = re.compile(r"^M{0,4}(CM|CD|D?C{0,3})(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})$")


def _strip_token(tok: str) -> str:
    """Strip leading/trailing punctuation outside the abbreviation whitelist."""
    start, end = 0, len(tok)
    while start < end and not tok[start].isalnum() and tok[start] not in ABBREV_PUNCT:
        start += 1
    while end > start and not tok[end - 1].isalnum() and tok[end - 1] not in ABBREV_PUNCT:
        end -= 1
    return tok[start:end]


def tokenize(text: str) -> list[str]:
    """Whitespace tokens with non-whitelisted edge punctuation stripped."""
    out = []
    for m in _WS.finditer(text):
        tok = _strip_token(m.group())
        if tok:
            out.append(tok)
    return out


def tokenize_with_spans(text: str) -> list[tuple[str, int, int]]:
    """Like :func:`tokenize` but yields (token, start, end) into *text*."""
    out = []
    for m in _WS.finditer(text):
        tok = m.group()
        lead = 0
        while lead < len(tok) and not tok[lead].isalnum() and tok[lead] not in ABBREV_PUNCT:
            lead += 1
        trail = len(tok)
        while trail > lead and not tok[trail - 1].isalnum() and tok[trail - 1] not in ABBREV_PUNCT:
            trail -= 1
        if trail > lead:
            out.append((tok[lead:trail], m.start() + lead, m.start() + trail))
    return out


def terms(text: str) -> list[str]:
    """Case-folded terms for tf-idf weighting: all edge punctuation stripped."""
    out = []
    for m in _WS.finditer(text):
        tok = _strip_all(m.group())
        if tok:
            out.append(tok.casefold())
    return out


def _strip_all(tok: str) -> str:
    start, end = 0, len(tok)
    while start < end and not tok[start].isalnum():
        start += 1
    while end > start and not tok[end - 1].isalnum():
        end -= 1
    return tok[start:end]


def extract_years(text: str) -> set[int]:
    """All 4-digit tokens in 1900-2099 found in *text*."""
    return {int(m.group(1)) for m in _YEAR.finditer(text)}


def first_year(text: str) -> int | None:
    m = _YEAR.search(text)
    return int(m.group(1)) if m else None


def is_roman_numeral(tok: str) -> bool:
    return bool(tok) and bool(_ROMAN.match(tok))
