"""Evaluate pipeline output against a gold standard and export links as RDF.

This demo covers the last two stations of the pipeline:

1. score detection, matching, and the combined pipeline against a small
   gold standard (precision / recall / F-measure),
2. build a link set from the ranked output and a curator's confirmation,
3. serialize it as N-Triples, Turtle, and JSON.

Run:  python demos/03_evaluate_and_export.py
"""

from dataref.detector import ArticleText, find_references
from dataref.dictionary import Feature, FeatureDictionary
from dataref.evaluator import (GoldStandard, evaluate_combined, evaluate_detection,
                               evaluate_matching, feature_key, format_report)
from dataref.exporter import (ArticleMetadata, export_json, export_ntriples,
                              export_turtle)
from dataref.pipeline import build_linkset, feature_groups, rank_article
from dataref.ranker import rank_candidates
from dataref.registry import DatasetRecord, RegistryIndex

ARTICLE = ArticleText("demo-article",
                      "We analyse the ALLBUS 2014 data. The ALLBUS 1994 serves "
                      "as a baseline for the comparison.")
INDEX = RegistryIndex.build([
    DatasetRecord("10.6/allbus-1994", "ALLBUS 1994", year=1994),
    DatasetRecord("10.6/allbus-2014", "ALLBUS 2014", year=2014),
])
DICTIONARY = FeatureDictionary(
    abbreviations=frozenset({Feature("ALLBUS", "abbreviation")}))

ALLBUS = feature_key("ALLBUS", "abbreviation")
GOLD = GoldStandard(
    features={"demo-article": {ALLBUS}},
    matches={("demo-article", ALLBUS): {"10.6/allbus-2014", "10.6/allbus-1994"}})


def main() -> None:
    # 1: evaluation
    refs = find_references(ARTICLE, DICTIONARY)
    detected = {"demo-article": {r.feature.key() for r in refs}}
    suggestions = {("demo-article", r.feature.key()):
                   [m.doi for m in rank_candidates(r, INDEX, ARTICLE)]
                   for r in refs}
    for report in (evaluate_detection(detected, GOLD),
                   evaluate_matching(suggestions, GOLD),
                   evaluate_combined(detected, suggestions, GOLD)):
        print(format_report(report))

    # 2: link set; pretend a curator confirmed the 2014 study
    groups = feature_groups(rank_article(ARTICLE, DICTIONARY, INDEX))
    article = ArticleMetadata("demo-article", "doi:10.9/demo-article",
                              title="Wandel der Einstellungen",
                              journal="Methoden, Daten, Analysen")
    linkset = build_linkset(article, groups, confirmed_dois={"10.6/allbus-2014"})

    # 3: three serializations of the same link set
    print("\n--- N-Triples ---")
    print(export_ntriples(linkset), end="")
    print("--- Turtle ---")
    print(export_turtle(linkset), end="")
    print("--- JSON ---")
    print(export_json(linkset), end="")


if __name__ == "__main__":
    main()
