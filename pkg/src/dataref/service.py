"""HTTP service for the review UI: pipeline endpoints plus the M1/M2 workflows.

The service is the only stateful component. Session decisions are written to
an append-only log per session before the response goes out and replayed on
startup, so a restart loses nothing. The pipeline itself stays pure: every
detection request runs against the current dictionary, so false-positive
additions take effect immediately.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from pydantic import BaseModel

from .detector import ArticleText, find_references
from .dictionary import FeatureDictionary, apply_false_positives, load_base_terms
from .exporter import (ArticleMetadata, export_json, export_ntriples,
                       export_turtle)
from .pipeline import build_linkset, feature_groups, rank_article
from .ranker import DEFAULT_CONFIG, RankerConfig
from .registry import RegistryIndex, load_snapshot

SCHEMA_VERSION = 1


class SessionCreate(BaseModel):
    article_id: str
    workflow: str


class Decision(BaseModel):
    item: str
    doi: str | None = None
    reject: bool = False


class UndoRequest(BaseModel):
    item: str


class FalsePositive(BaseModel):
    text: str
    kind: str


@dataclass
class ReviewSession:
    session_id: str
    article_id: str
    workflow: str
    items: list[str]
    decisions: dict[str, dict] = field(default_factory=dict)

    @property
    def pending(self) -> list[str]:
        return [i for i in self.items if i not in self.decisions]


class AppState:
    def __init__(self, data_dir, index: RegistryIndex | None = None,
                 dictionary: FeatureDictionary | None = None,
                 config: RankerConfig = DEFAULT_CONFIG):
        self.data_dir = Path(data_dir)
        self.index = index or RegistryIndex.build([])
        self.dictionary = dictionary or FeatureDictionary(base_terms=load_base_terms())
        self.config = config
        self.articles: dict[str, tuple[ArticleText, str]] = {}  # id -> (text, pid)
        self.sessions: dict[str, ReviewSession] = {}
        self._dict_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        (self.data_dir / "articles").mkdir(parents=True, exist_ok=True)
        (self.data_dir / "sessions").mkdir(parents=True, exist_ok=True)
        self._replay()

    # -- persistence ------------------------------------------------------

    def _replay(self):
        for path in sorted((self.data_dir / "articles").glob("*.json")):
            obj = json.loads(path.read_text("utf-8"))
            article = ArticleText(obj["article_id"], obj["fulltext"])
            self.articles[article.article_id] = (article, obj["pid"])
        fp_dir = self.data_dir / "dictionary"
        if fp_dir.exists():
            self.dictionary = FeatureDictionary.load(fp_dir)
        for path in sorted((self.data_dir / "sessions").glob("*.jsonl")):
            session = None
            for line in path.read_text("utf-8").splitlines():
                event = json.loads(line)
                if event["event"] == "create":
                    session = ReviewSession(event["session_id"], event["article_id"],
                                            event["workflow"], event["items"])
                elif event["event"] == "decision" and session:
                    session.decisions[event["item"]] = {
                        "doi": event.get("doi"), "reject": event.get("reject", False)}
                elif event["event"] == "undo" and session:
                    session.decisions.pop(event["item"], None)
            if session:
                self.sessions[session.session_id] = session
                self._session_locks[session.session_id] = threading.Lock()

    def persist_article(self, article: ArticleText, pid: str):
        path = self.data_dir / "articles" / f"{article.article_id}.json"
        path.write_text(json.dumps({"article_id": article.article_id,
                                    "fulltext": article.fulltext, "pid": pid},
                                   ensure_ascii=False), "utf-8")

    def persist_dictionary(self):
        self.dictionary.save(self.data_dir / "dictionary")

    def append_session_event(self, session_id: str, event: dict):
        path = self.data_dir / "sessions" / f"{session_id}.jsonl"
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, ensure_ascii=False) + "\n")
            fh.flush()

    # -- lookups -----------------------------------------------------------

    def article(self, article_id: str) -> ArticleText:
        if article_id not in self.articles:
            raise HTTPException(status_code=404, detail=f"unknown article {article_id!r}")
        return self.articles[article_id][0]

    def session(self, session_id: str) -> ReviewSession:
        if session_id not in self.sessions:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return self.sessions[session_id]

    def session_lock(self, session_id: str) -> threading.Lock:
        return self._session_locks[session_id]


def _feature_item(kind: str, text: str) -> str:
    return f"feature:{kind}:{text}"


def _match_payload(m) -> dict:
    return {"doi": m.doi, "title": m.title, "score": m.score, "rank": m.rank}


def create_app(data_dir, snapshot_path=None, dict_dir=None,
               config: RankerConfig = DEFAULT_CONFIG,
               index: RegistryIndex | None = None,
               dictionary: FeatureDictionary | None = None) -> FastAPI:
    if snapshot_path is not None:
        index = load_snapshot(snapshot_path)
    if dict_dir is not None:
        dictionary = FeatureDictionary.load(dict_dir)
    state = AppState(data_dir, index=index, dictionary=dictionary, config=config)
    app = FastAPI(title="dataref")
    app.state.dataref = state

    def versioned(payload: dict) -> dict:
        payload["schema_version"] = SCHEMA_VERSION
        return payload

    @app.post("/articles", status_code=201)
    async def post_article(request: Request, article_id: str, pid: str | None = None):
        body = (await request.body()).decode("utf-8")
        if not body.strip():
            raise HTTPException(status_code=400, detail="article body must be non-empty")
        article = ArticleText(article_id, body)
        pid = pid or f"urn:dataref:article:{article_id}"
        state.persist_article(article, pid)
        state.articles[article_id] = (article, pid)
        return versioned({"article_id": article_id, "pid": pid})

    @app.get("/articles/{article_id}/references")
    def get_references(article_id: str):
        article = state.article(article_id)
        refs = find_references(article, state.dictionary)
        return versioned({"article_id": article_id, "references": [
            {"index": i, "sentence": r.sentence, "span": list(r.span),
             "segment": r.segment, "segment_index": r.segment_index,
             "feature": {"text": r.feature.text, "kind": r.feature.kind}}
            for i, r in enumerate(refs)
        ]})

    @app.get("/articles/{article_id}/references/{n}/candidates")
    def get_candidates(article_id: str, n: int):
        article = state.article(article_id)
        ranked = rank_article(article, state.dictionary, state.index, state.config)
        if n < 0 or n >= len(ranked):
            raise HTTPException(status_code=404, detail=f"no reference {n}")
        ref, matches = ranked[n]
        return versioned({"article_id": article_id, "reference": n,
                          "segment": ref.segment,
                          "candidates": [_match_payload(m) for m in matches]})

    @app.get("/articles/{article_id}/features")
    def get_features(article_id: str):
        article = state.article(article_id)
        ranked = rank_article(article, state.dictionary, state.index, state.config)
        groups = feature_groups(ranked, state.config)
        return versioned({"article_id": article_id, "features": [
            {"feature": {"kind": kind, "text": text},
             "candidates": [_match_payload(m) for m in matches]}
            for (kind, text), matches in sorted(groups.items())
        ]})

    @app.post("/sessions", status_code=201)
    def post_session(body: SessionCreate):
        if body.workflow not in ("per_reference", "per_feature"):
            raise HTTPException(status_code=400, detail=f"unknown workflow {body.workflow!r}")
        article = state.article(body.article_id)
        refs = find_references(article, state.dictionary)
        if body.workflow == "per_reference":
            items = [f"ref:{i}" for i in range(len(refs))]
        else:
            keys = sorted({r.feature.key() for r in refs})
            items = [_feature_item(kind, text) for kind, text in keys]
        session = ReviewSession(uuid.uuid4().hex, body.article_id, body.workflow, items)
        state.append_session_event(session.session_id, {
            "event": "create", "session_id": session.session_id,
            "article_id": session.article_id, "workflow": session.workflow,
            "items": items})
        state.sessions[session.session_id] = session
        state._session_locks[session.session_id] = threading.Lock()
        return versioned({"session_id": session.session_id, "article_id": session.article_id,
                          "workflow": session.workflow, "items": items,
                          "pending": session.pending})

    @app.post("/sessions/{session_id}/decisions")
    def post_decision(session_id: str, body: Decision):
        session = state.session(session_id)
        with state.session_lock(session_id):
            if body.item not in session.items:
                raise HTTPException(status_code=404, detail=f"unknown item {body.item!r}")
            if body.item in session.decisions:
                raise HTTPException(status_code=409, detail=f"item {body.item!r} already decided")
            if not body.reject and not body.doi:
                raise HTTPException(status_code=400, detail="decision needs a doi or reject=true")
            state.append_session_event(session_id, {
                "event": "decision", "item": body.item,
                "doi": body.doi, "reject": body.reject})
            session.decisions[body.item] = {"doi": body.doi, "reject": body.reject}
        return versioned({"session_id": session_id, "item": body.item,
                          "pending": session.pending})

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str, body: UndoRequest):
        session = state.session(session_id)
        with state.session_lock(session_id):
            if body.item not in session.decisions:
                raise HTTPException(status_code=404, detail=f"item {body.item!r} not decided")
            state.append_session_event(session_id, {"event": "undo", "item": body.item})
            del session.decisions[body.item]
        return versioned({"session_id": session_id, "item": body.item,
                          "pending": session.pending})

    @app.post("/dictionary/false-positives")
    def post_false_positive(body: FalsePositive):
        if body.kind not in ("abbreviation", "phrase"):
            raise HTTPException(status_code=400, detail=f"unknown kind {body.kind!r}")
        with state._dict_lock:
            updated = apply_false_positives(state.dictionary, [(body.text, body.kind)])
            state.dictionary = updated  # atomic swap
            state.persist_dictionary()
        return versioned({"text": body.text, "kind": body.kind})

    @app.get("/dictionary")
    def get_dictionary():
        d = state.dictionary
        return versioned({
            "abbreviations": sorted(f.text for f in d.abbreviations),
            "phrases": sorted(f.text for f in d.phrases),
            "fp_abbreviations": sorted(d.fp_abbreviations),
            "fp_phrases": sorted(d.fp_phrases),
            "base_terms": sorted(d.base_terms),
        })

    @app.get("/articles/{article_id}/export")
    def get_export(article_id: str, format: str = "json"):
        article = state.article(article_id)
        pid = state.articles[article_id][1]
        ranked = rank_article(article, state.dictionary, state.index, state.config)
        groups = feature_groups(ranked, state.config)
        confirmed = {
            d["doi"]
            for s in state.sessions.values() if s.article_id == article_id
            for d in s.decisions.values() if d.get("doi")
        }
        linkset = build_linkset(ArticleMetadata(article_id=article_id, pid=pid),
                                groups, confirmed)
        if format == "json":
            return Response(export_json(linkset), media_type="application/json")
        if format == "nt":
            return Response(export_ntriples(linkset), media_type="application/n-triples")
        if format == "ttl":
            return Response(export_turtle(linkset), media_type="text/turtle")
        raise HTTPException(status_code=400, detail=f"unknown format {format!r}")

    return app
