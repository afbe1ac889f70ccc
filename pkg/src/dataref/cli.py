"""dataref command-line interface."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import evaluator, exporter, harvest as harvest_mod
from .detector import ArticleText, find_references
from .dictionary import FeatureDictionary, build_dictionary, pattern_stats
from .evaluator import GoldStandard, feature_key
from .pipeline import feature_groups, rank_article
from .ranker import RankerConfig
from .registry import load_snapshot, write_snapshot


@click.group()
def main():
    """Detect and link dataset references in social-science full texts."""


def _load_articles(path: Path) -> list[ArticleText]:
    paths = sorted(path.glob("*.txt")) if path.is_dir() else [path]
    return [ArticleText(p.stem, p.read_text("utf-8")) for p in paths]


def _config(config_path) -> RankerConfig:
    return RankerConfig.from_file(config_path) if config_path else RankerConfig()


@main.command("harvest")
@click.option("--endpoint", required=True)
@click.option("--set", "set_spec", default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--resume", default=None, help="Resumption token to continue from.")
def harvest_cmd(endpoint, set_spec, out, resume):
    """Harvest dataset metadata over OAI-PMH into a snapshot file."""
    stats = harvest_mod.HarvestStats()
    try:
        records = list(harvest_mod.harvest(endpoint, set_spec=set_spec,
                                           resume_state=resume, stats=stats))
    except harvest_mod.HarvestConnectionError as exc:
        click.echo(f"harvest interrupted; resume with --resume {exc.resume_state}", err=True)
        raise SystemExit(1)
    count = write_snapshot(records, out)
    click.echo(f"wrote {count} records to {out} ({stats.skipped} skipped, "
               f"{stats.filtered} non-dataset)")


@main.command("snapshot-info")
@click.argument("snapshot", type=click.Path(exists=True, dir_okay=False))
def snapshot_info(snapshot):
    """Print record count and title-pattern statistics for a snapshot."""
    index = load_snapshot(snapshot)
    titles = [r.title for r in index.records.values()]
    dictionary = build_dictionary(titles)
    stats = pattern_stats(titles, dictionary)
    click.echo(f"records: {len(index)}")
    if index.duplicate_count:
        click.echo(f"duplicate DOIs (last wins): {index.duplicate_count}")
    for key, value in stats.items():
        click.echo(f"{key}: {value:.4f}")


@main.command("build-dict")
@click.option("--snapshot", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def build_dict(snapshot, out_dir):
    """Extract abbreviation and phrase dictionaries from snapshot titles."""
    index = load_snapshot(snapshot)
    records = list(index.records.values())
    dictionary = build_dictionary([r.title for r in records],
                                  ids=[r.doi for r in records])
    dictionary.save(out_dir)
    click.echo(f"abbreviations: {len(dictionary.abbreviations)}, "
               f"phrases: {len(dictionary.phrases)} -> {out_dir}")


@main.command("dict-stats")
@click.option("--snapshot", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--dict", "dict_dir", required=True, type=click.Path(exists=True, file_okay=False))
def dict_stats(snapshot, dict_dir):
    """Title-pattern statistics of a snapshot under an existing dictionary."""
    index = load_snapshot(snapshot)
    dictionary = FeatureDictionary.load(dict_dir)
    stats = pattern_stats([r.title for r in index.records.values()], dictionary)
    for key, value in stats.items():
        click.echo(f"{key}: {value:.4f}")


@main.command("detect")
@click.option("--dict", "dict_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--articles", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def detect(dict_dir, articles, out):
    """Find dictionary features in article full texts."""
    dictionary = FeatureDictionary.load(dict_dir)
    count = 0
    with open(out, "w", encoding="utf-8") as fh:
        for article in _load_articles(Path(articles)):
            for ref in find_references(article, dictionary):
                fh.write(json.dumps({
                    "article_id": ref.article_id,
                    "span": list(ref.span),
                    "feature": ref.feature.text,
                    "kind": ref.feature.kind,
                    "segment_index": ref.segment_index,
                    "segment": ref.segment,
                }, ensure_ascii=False) + "\n")
                count += 1
    click.echo(f"wrote {count} candidates to {out}")


@main.command("rank")
@click.option("--snapshot", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--dict", "dict_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--article", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["per-reference", "per-feature"]),
              default="per-reference")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def rank(snapshot, dict_dir, article, mode, out, config_path):
    """Rank candidate dataset titles for every reference in one article."""
    index = load_snapshot(snapshot)
    dictionary = FeatureDictionary.load(dict_dir)
    config = _config(config_path)
    art = _load_articles(Path(article))[0]
    ranked = rank_article(art, dictionary, index, config)
    lines = []
    if mode == "per-reference":
        for ref, matches in ranked:
            for m in matches:
                lines.append({"article_id": art.article_id, "span": list(ref.span),
                              "feature": ref.feature.text, "kind": ref.feature.kind,
                              "rank": m.rank, "doi": m.doi, "title": m.title,
                              "score": m.score})
    else:
        for (kind, text), matches in sorted(feature_groups(ranked, config).items()):
            for m in matches:
                lines.append({"article_id": art.article_id, "feature": text,
                              "kind": kind, "rank": m.rank, "doi": m.doi,
                              "title": m.title, "score": m.score})
    with open(out, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(json.dumps(line, ensure_ascii=False) + "\n")
    click.echo(f"wrote {len(lines)} ranked rows to {out}")


def _read_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


@main.command("evaluate")
@click.option("--gold", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--detected", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--ranked", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--phase", type=click.Choice(["detection", "matching", "combined", "all"]),
              default="all")
@click.option("--json-out", default=None, type=click.Path(dir_okay=False))
def evaluate(gold, detected, ranked, phase, json_out):
    """Score detection/matching output against a gold-standard CSV."""
    gold_std = GoldStandard.load(gold)
    detected_map: dict[str, set] = {}
    for row in _read_jsonl(detected):
        detected_map.setdefault(row["article_id"], set()).add(
            feature_key(row["feature"], row["kind"]))
    suggestions: dict[tuple, list] = {}
    if ranked:
        for row in _read_jsonl(ranked):
            key = (row["article_id"], feature_key(row["feature"], row["kind"]))
            suggestions.setdefault(key, []).append(row["doi"])

    reports = []
    if phase in ("detection", "all"):
        reports.append(evaluator.evaluate_detection(detected_map, gold_std))
    if phase in ("matching", "all"):
        tp_items = {k: v for k, v in suggestions.items()
                    if k[1] in gold_std.features.get(k[0], set())}
        reports.append(evaluator.evaluate_matching(tp_items, gold_std))
    if phase in ("combined", "all"):
        reports.append(evaluator.evaluate_combined(detected_map, suggestions, gold_std))
    for report in reports:
        click.echo(evaluator.format_report(report))
    if json_out:
        payload = [report.__dict__ for report in reports]
        Path(json_out).write_text(json.dumps(payload, indent=2) + "\n", "utf-8")


@main.command("export")
@click.option("--linkset", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["nt", "ttl", "json"]), required=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def export(linkset, fmt, out):
    """Serialize a link set (JSON file) as N-Triples, Turtle or JSON."""
    ls = exporter.import_json(Path(linkset).read_text("utf-8"))
    if fmt == "nt":
        text = exporter.export_ntriples(ls)
    elif fmt == "ttl":
        text = exporter.export_turtle(ls)
    else:
        text = exporter.export_json(ls)
    Path(out).write_text(text, "utf-8")
    click.echo(f"wrote {out}")


@main.command("serve")
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--data-dir", required=True, type=click.Path(file_okay=False))
@click.option("--snapshot", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--dict", "dict_dir", default=None, type=click.Path(exists=True, file_okay=False))
@click.option("--ui-dir", default=None, type=click.Path(exists=True, file_okay=False),
              help="Static review-UI assets to serve under /ui.")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def serve(port, host, data_dir, snapshot, dict_dir, ui_dir, config_path):
    """Run the review service."""
    import uvicorn

    from .service import create_app

    app = create_app(data_dir, snapshot_path=snapshot, dict_dir=dict_dir,
                     config=_config(config_path))
    if ui_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
