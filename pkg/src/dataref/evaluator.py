"""Two-phase evaluation against a gold standard: detection, matching, combined."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

FeatureKey = tuple[str, str]  # (kind, normalized text)


class EvaluationInputError(ValueError):
    """Detected output names an article the gold standard does not know."""


def feature_key(text: str, kind: str) -> FeatureKey:
    """Phrases compare case-insensitively, abbreviations exactly."""
    return (kind, text if kind == "abbreviation" else text.casefold())


@dataclass
class GoldStandard:
    # article_id -> set of feature keys that truly occur in the article
    features: dict[str, set[FeatureKey]] = field(default_factory=dict)
    # (article_id, feature key) -> acceptable DOIs (a reference may have several)
    matches: dict[tuple[str, FeatureKey], set[str]] = field(default_factory=dict)

    @classmethod
    def load(cls, path) -> "GoldStandard":
        """CSV columns: article_id, feature, kind, acceptable_dois (';'-joined)."""
        gold = cls()
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                key = feature_key(row["feature"], row["kind"])
                article = row["article_id"]
                gold.features.setdefault(article, set()).add(key)
                dois = {d.strip() for d in row.get("acceptable_dois", "").split(";") if d.strip()}
                if dois:
                    gold.matches.setdefault((article, key), set()).update(dois)
        return gold


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


@dataclass(frozen=True)
class EvaluationReport:
    phase: str
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_measure: float
    precision_undefined: bool = False
    recall_undefined: bool = False

    @classmethod
    def from_counts(cls, phase: str, tp: int, fp: int, fn: int) -> "EvaluationReport":
        p_undef = tp + fp == 0
        r_undef = tp + fn == 0
        p = 0.0 if p_undef else tp / (tp + fp)
        r = 0.0 if r_undef else tp / (tp + fn)
        return cls(phase=phase, tp=tp, fp=fp, fn=fn, precision=p, recall=r,
                   f_measure=f_measure(p, r),
                   precision_undefined=p_undef, recall_undefined=r_undef)


def evaluate_detection(detected: dict[str, set[FeatureKey]],
                       gold: GoldStandard) -> EvaluationReport:
    """Feature-per-article scoring: both sides / gold only / output only."""
    unknown = set(detected) - set(gold.features)
    if unknown:
        raise EvaluationInputError(f"articles not in gold standard: {sorted(unknown)}")
    tp = fp = fn = 0
    for article, gold_keys in gold.features.items():
        found = detected.get(article, set())
        tp += len(found & gold_keys)
        fp += len(found - gold_keys)
        fn += len(gold_keys - found)
    return EvaluationReport.from_counts("detection", tp, fp, fn)


def _matching_counts(suggestions: dict[tuple[str, FeatureKey], list[str]],
                     gold: GoldStandard) -> tuple[int, int]:
    """Returns (tp, misses); each miss is one FP and one FN."""
    tp = misses = 0
    for item, dois in suggestions.items():
        acceptable = gold.matches.get(item, set())
        if acceptable & set(dois):
            tp += 1
        else:
            misses += 1
    return tp, misses


def evaluate_matching(suggestions: dict[tuple[str, FeatureKey], list[str]],
                      gold: GoldStandard) -> EvaluationReport:
    """Matching over detection true positives only; fp = fn by construction."""
    tp, misses = _matching_counts(suggestions, gold)
    return EvaluationReport.from_counts("matching", tp, misses, misses)


def evaluate_combined(detected: dict[str, set[FeatureKey]],
                      suggestions: dict[tuple[str, FeatureKey], list[str]],
                      gold: GoldStandard) -> EvaluationReport:
    """Both phases as one unit: detection errors carry over unchanged."""
    unknown = set(detected) - set(gold.features)
    if unknown:
        raise EvaluationInputError(f"articles not in gold standard: {sorted(unknown)}")
    tp = fp = fn = 0
    for article, gold_keys in gold.features.items():
        found = detected.get(article, set())
        fp += len(found - gold_keys)
        fn += len(gold_keys - found)
        for key in found & gold_keys:
            dois = suggestions.get((article, key), [])
            acceptable = gold.matches.get((article, key), set())
            if acceptable & set(dois):
                tp += 1
            else:
                fp += 1
                fn += 1
    return EvaluationReport.from_counts("combined", tp, fp, fn)


def format_report(report: EvaluationReport) -> str:
    flags = []
    if report.precision_undefined:
        flags.append("P undefined")
    if report.recall_undefined:
        flags.append("R undefined")
    note = f"  [{', '.join(flags)}]" if flags else ""
    return (f"{report.phase:<12} TP={report.tp:<6} FP={report.fp:<6} FN={report.fn:<6} "
            f"P={report.precision:.3f} R={report.recall:.3f} F={report.f_measure:.3f}{note}")
