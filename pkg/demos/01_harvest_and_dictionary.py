"""Harvest a registry snapshot and derive the feature dictionary.

This demo walks the first half of the pipeline:

1. harvest dataset metadata from an OAI-PMH source (a local fixture file
   here, so the demo runs offline — point `harvest()` at a real endpoint
   URL to go live),
2. write the records to a snapshot file and build the title index,
3. extract the abbreviation and phrase dictionary from the titles,
4. inspect pattern statistics and flag a false positive.

Run:  python demos/01_harvest_and_dictionary.py
"""

import tempfile
from pathlib import Path

from dataref.dictionary import apply_false_positives, build_dictionary, pattern_stats
from dataref.harvest import HarvestStats, harvest
from dataref.registry import load_snapshot, write_snapshot

TITLES = [
    ("10.6/dawn-2008", "Drug Abuse Warning Network (DAWN), 2008"),
    ("10.6/nypd-2006", "New York Police Department (NYPD) Stop, Question, "
                       "and Frisk Database, 2006"),
    ("10.6/allbus-2010", "ALLBUS 2010"),
    ("10.6/exit-1996", "Czech Exit Poll 1996"),
    ("10.6/hunting-1980", "Survey of Hunting, 1980"),
]

OAI_RECORD = (
    "<record><header><identifier>oai:{doi}</identifier></header><metadata>"
    '<oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" '
    'xmlns:dc="http://purl.org/dc/elements/1.1/">'
    "<dc:title>{title}</dc:title><dc:identifier>{doi}</dc:identifier>"
    "<dc:type>Dataset</dc:type></oai_dc:dc></metadata></record>"
)


def make_fixture(path: Path) -> None:
    records = "".join(OAI_RECORD.format(doi=doi, title=title) for doi, title in TITLES)
    path.write_text(
        '<?xml version="1.0" encoding="UTF-8"?>'
        '<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/">'
        f"<ListRecords>{records}</ListRecords></OAI-PMH>")


def main() -> None:
    workdir = Path(tempfile.mkdtemp(prefix="dataref-demo-"))
    fixture = workdir / "oai_page.xml"
    make_fixture(fixture)

    # 1+2: harvest and snapshot
    stats = HarvestStats()
    records = list(harvest(str(fixture), stats=stats))
    snapshot = workdir / "snapshot.jsonl"
    write_snapshot(records, snapshot)
    index = load_snapshot(snapshot)
    print(f"harvested {len(index)} dataset records "
          f"({stats.skipped} skipped, {stats.filtered} filtered)")

    # 3: dictionary from titles
    titles = [r.title for r in index.records.values()]
    dictionary = build_dictionary(titles, ids=[r.doi for r in index.records.values()])
    print("abbreviations:", sorted(f.text for f in dictionary.abbreviations))
    print("phrases:      ", sorted(f.text for f in dictionary.phrases))

    # 4: statistics, then curate a false positive
    for key, value in pattern_stats(titles, dictionary).items():
        print(f"  {key}: {value:.2%}")
    dictionary = apply_false_positives(dictionary, [("NYPD", "abbreviation")])
    print("after flagging NYPD:", sorted(f.text for f in dictionary.abbreviations))

    dictionary.save(workdir / "dict")
    print(f"artifacts in {workdir}")


if __name__ == "__main__":
    main()
