import pytest
from fastapi.testclient import TestClient

from dataref.detector import ArticleText, find_references
from dataref.dictionary import Feature, FeatureDictionary
from dataref.registry import DatasetRecord, RegistryIndex
from dataref.service import create_app

from test_exporter import validate_ntriples

TEXT = ("We use the ALLBUS 2010 data for Germany. "
        "The NYPD figures differ. Later the ALLBUS 1994 is compared.")


def _dictionary():
    return FeatureDictionary(abbreviations=frozenset({
        Feature("ALLBUS", "abbreviation"), Feature("NYPD", "abbreviation")}))


def _index(n_allbus=3):
    records = [DatasetRecord(f"10.4232/allbus-{1990 + 2 * i}",
                             f"ALLBUS {1990 + 2 * i}", year=1990 + 2 * i)
               for i in range(n_allbus)]
    records.append(DatasetRecord("10.4232/nypd", "NYPD Stop and Frisk 2006", year=2006))
    return RegistryIndex.build(records)


@pytest.fixture
def client(tmp_path):
    app = create_app(tmp_path / "data", index=_index(), dictionary=_dictionary())
    with TestClient(app) as c:
        yield c


def _post_article(client, article_id="a1", text=TEXT):
    return client.post(f"/articles?article_id={article_id}", content=text.encode())


class TestArticles:
    def test_post_returns_201_with_schema_version(self, client):
        resp = _post_article(client)
        assert resp.status_code == 201
        assert resp.json()["schema_version"] == 1
        assert resp.json()["pid"] == "urn:dataref:article:a1"

    def test_empty_body_rejected(self, client):
        assert _post_article(client, text="   ").status_code == 400

    def test_unknown_article_404(self, client):
        assert client.get("/articles/ghost/references").status_code == 404

    def test_references_equal_library_output(self, client):
        _post_article(client)
        got = client.get("/articles/a1/references").json()["references"]
        expected = find_references(ArticleText("a1", TEXT), _dictionary())
        assert len(got) == len(expected)
        for payload, ref in zip(got, expected):
            assert payload["segment"] == ref.segment
            assert payload["feature"] == {"text": ref.feature.text,
                                          "kind": ref.feature.kind}
            assert payload["span"] == list(ref.span)


class TestRanking:
    def test_candidates_capped_at_five(self, tmp_path):
        app = create_app(tmp_path / "data", index=_index(n_allbus=40),
                         dictionary=_dictionary())
        with TestClient(app) as client:
            _post_article(client)
            resp = client.get("/articles/a1/references/0/candidates")
            assert resp.status_code == 200
            assert 1 <= len(resp.json()["candidates"]) <= 5

    def test_candidate_index_out_of_range_404(self, client):
        _post_article(client)
        assert client.get("/articles/a1/references/99/candidates").status_code == 404

    def test_features_capped_at_six(self, tmp_path):
        app = create_app(tmp_path / "data", index=_index(n_allbus=40),
                         dictionary=_dictionary())
        with TestClient(app) as client:
            _post_article(client)
            features = client.get("/articles/a1/features").json()["features"]
            kinds = {f["feature"]["text"] for f in features}
            assert kinds == {"ALLBUS", "NYPD"}
            for group in features:
                assert 1 <= len(group["candidates"]) <= 6


class TestFalsePositives:
    def test_fp_changes_redetection(self, client):
        _post_article(client)
        before = client.get("/articles/a1/references").json()["references"]
        assert any(r["feature"]["text"] == "NYPD" for r in before)
        resp = client.post("/dictionary/false-positives",
                           json={"text": "NYPD", "kind": "abbreviation"})
        assert resp.status_code == 200
        after = client.get("/articles/a1/references").json()["references"]
        assert not any(r["feature"]["text"] == "NYPD" for r in after)
        assert len(after) == len(before) - 1

    def test_dictionary_endpoint_reflects_fp(self, client):
        client.post("/dictionary/false-positives",
                    json={"text": "NYPD", "kind": "abbreviation"})
        d = client.get("/dictionary").json()
        assert "NYPD" in d["fp_abbreviations"]
        assert "NYPD" not in d["abbreviations"]

    def test_unknown_kind_rejected(self, client):
        resp = client.post("/dictionary/false-positives",
                           json={"text": "X", "kind": "suffix"})
        assert resp.status_code == 400


class TestSessions:
    def _session(self, client, workflow="per_reference"):
        _post_article(client)
        return client.post("/sessions",
                           json={"article_id": "a1", "workflow": workflow}).json()

    def test_per_reference_items(self, client):
        session = self._session(client)
        n_refs = len(find_references(ArticleText("a1", TEXT), _dictionary()))
        assert session["items"] == [f"ref:{i}" for i in range(n_refs)]
        assert session["pending"] == session["items"]

    def test_per_feature_items(self, client):
        session = self._session(client, workflow="per_feature")
        assert session["items"] == ["feature:abbreviation:ALLBUS",
                                    "feature:abbreviation:NYPD"]

    def test_unknown_workflow_400(self, client):
        _post_article(client)
        resp = client.post("/sessions", json={"article_id": "a1", "workflow": "bulk"})
        assert resp.status_code == 400

    def test_decide_shrinks_pending_and_repeat_conflicts(self, client):
        session = self._session(client)
        sid = session["session_id"]
        resp = client.post(f"/sessions/{sid}/decisions",
                           json={"item": "ref:0", "doi": "10.4232/allbus-1990"})
        assert resp.status_code == 200
        assert "ref:0" not in resp.json()["pending"]
        again = client.post(f"/sessions/{sid}/decisions",
                            json={"item": "ref:0", "doi": "10.4232/allbus-1992"})
        assert again.status_code == 409

    def test_decision_requires_doi_or_reject(self, client):
        sid = self._session(client)["session_id"]
        assert client.post(f"/sessions/{sid}/decisions",
                           json={"item": "ref:0"}).status_code == 400
        assert client.post(f"/sessions/{sid}/decisions",
                           json={"item": "ref:0", "reject": True}).status_code == 200

    def test_unknown_item_404(self, client):
        sid = self._session(client)["session_id"]
        assert client.post(f"/sessions/{sid}/decisions",
                           json={"item": "ref:99", "reject": True}).status_code == 404

    def test_undo_restores_pending(self, client):
        sid = self._session(client)["session_id"]
        client.post(f"/sessions/{sid}/decisions",
                    json={"item": "ref:0", "doi": "10.4232/allbus-1990"})
        resp = client.post(f"/sessions/{sid}/undo", json={"item": "ref:0"})
        assert resp.status_code == 200
        assert "ref:0" in resp.json()["pending"]
        redo = client.post(f"/sessions/{sid}/decisions",
                           json={"item": "ref:0", "doi": "10.4232/allbus-1992"})
        assert redo.status_code == 200

    def test_undo_undecided_item_404(self, client):
        sid = self._session(client)["session_id"]
        assert client.post(f"/sessions/{sid}/undo",
                           json={"item": "ref:0"}).status_code == 404


class TestExport:
    def test_nt_passes_grammar(self, client):
        _post_article(client)
        resp = client.get("/articles/a1/export?format=nt")
        assert resp.status_code == 200
        validate_ntriples(resp.text)
        assert '"candidate"' in resp.text

    def test_confirmed_doi_marked_after_decision(self, client):
        _post_article(client)
        sid = client.post("/sessions", json={"article_id": "a1",
                                             "workflow": "per_feature"}).json()["session_id"]
        client.post(f"/sessions/{sid}/decisions",
                    json={"item": "feature:abbreviation:ALLBUS",
                          "doi": "10.4232/allbus-1990"})
        body = client.get("/articles/a1/export?format=json").json()
        by_doi = {l["doi"]: l for l in body["links"]}
        assert by_doi["10.4232/allbus-1990"]["status"] == "confirmed"
        assert all(l["status"] == "candidate"
                   for d, l in by_doi.items() if d != "10.4232/allbus-1990")

    def test_turtle_format(self, client):
        _post_article(client)
        resp = client.get("/articles/a1/export?format=ttl")
        assert resp.status_code == 200
        assert resp.text.startswith("@prefix")

    def test_unknown_format_400(self, client):
        _post_article(client)
        assert client.get("/articles/a1/export?format=xml").status_code == 400


class TestPersistence:
    def test_restart_replays_everything(self, tmp_path):
        data_dir = tmp_path / "data"
        app = create_app(data_dir, index=_index(), dictionary=_dictionary())
        with TestClient(app) as client:
            _post_article(client)
            sid = client.post("/sessions", json={
                "article_id": "a1", "workflow": "per_reference"}).json()["session_id"]
            client.post(f"/sessions/{sid}/decisions",
                        json={"item": "ref:0", "doi": "10.4232/allbus-1990"})
            client.post(f"/sessions/{sid}/decisions", json={"item": "ref:1", "reject": True})
            client.post(f"/sessions/{sid}/undo", json={"item": "ref:1"})
            client.post("/dictionary/false-positives",
                        json={"text": "NYPD", "kind": "abbreviation"})
            pending_before = client.get("/articles/a1/references").json()

        reborn = create_app(data_dir, index=_index(), dictionary=_dictionary())
        with TestClient(reborn) as client:
            # article survived
            refs = client.get("/articles/a1/references").json()
            assert refs == pending_before
            assert not any(r["feature"]["text"] == "NYPD" for r in refs["references"])
            # dictionary false positive survived
            assert "NYPD" in client.get("/dictionary").json()["fp_abbreviations"]
            # session log replayed: ref:0 decided, ref:1 undone
            conflict = client.post(f"/sessions/{sid}/decisions",
                                   json={"item": "ref:0", "doi": "10.4232/allbus-1992"})
            assert conflict.status_code == 409
            redo = client.post(f"/sessions/{sid}/decisions",
                               json={"item": "ref:1", "reject": True})
            assert redo.status_code == 200
            # confirmed decision still drives export status
            body = client.get("/articles/a1/export?format=json").json()
            statuses = {l["doi"]: l["status"] for l in body["links"]}
            assert statuses.get("10.4232/allbus-1990") == "confirmed"
