"""OAI-PMH 2.0 client for harvesting dataset metadata (Dublin Core)."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlparse

import requests

from .registry import DatasetRecord, record_from_metadata

OAI_NS = "{http://www.openarchives.org/OAI/2.0/}"
DC_NS = "{http://purl.org/dc/elements/1.1/}"

# dc:type values accepted as datasets when a type is present at all.
_DATASET_TYPES = {"dataset", "datasets", "research data", "forschungsdaten"}


class OaiProtocolError(RuntimeError):
    """Terminal OAI-PMH error response (badArgument, noRecordsMatch, ...)."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(f"OAI-PMH error {code}: {message}".strip())
        self.code = code


class HarvestConnectionError(RuntimeError):
    """Network failure; carries the last good resume state for a retry."""

    def __init__(self, resume_state: str | None, cause: Exception):
        super().__init__(f"harvest interrupted: {cause}")
        self.resume_state = resume_state


@dataclass
class HarvestStats:
    records: int = 0
    skipped: int = 0
    filtered: int = 0
    resume_state: str | None = None


def _is_local(endpoint: str) -> bool:
    parsed = urlparse(endpoint)
    return parsed.scheme in ("", "file")


def _local_path(endpoint: str) -> Path:
    parsed = urlparse(endpoint)
    return Path(parsed.path if parsed.scheme == "file" else endpoint)


def _fetch(endpoint: str, set_spec, token, session) -> str:
    if _is_local(endpoint):
        path = _local_path(endpoint)
        if token:
            # Fixture continuation: the token names a sibling response file.
            path = path.parent / token
        return path.read_text(encoding="utf-8")
    params = {"verb": "ListRecords"}
    if token:
        params["resumptionToken"] = token
    else:
        params["metadataPrefix"] = "oai_dc"
        if set_spec:
            params["set"] = set_spec
    response = session.get(endpoint, params=params, timeout=60)
    response.raise_for_status()
    return response.text


def _parse_record(element) -> DatasetRecord | None:
    """One <record>; returns None for deleted records; raises on bad metadata."""
    header = element.find(f"{OAI_NS}header")
    if header is not None and header.get("status") == "deleted":
        return None
    metadata = element.find(f"{OAI_NS}metadata")
    if metadata is None:
        raise ValueError("record without <metadata>")
    dc = metadata.find("{http://www.openarchives.org/OAI/2.0/oai_dc/}dc")
    if dc is None:
        dc = metadata
    titles = [e.text.strip() for e in dc.iter(f"{DC_NS}title") if e.text and e.text.strip()]
    if not titles:
        raise ValueError("record without <dc:title>")
    identifiers = [e.text.strip() for e in dc.iter(f"{DC_NS}identifier") if e.text and e.text.strip()]
    doi = None
    for ident in identifiers:
        if ident.startswith(("10.", "doi:")) or "doi.org/" in ident:
            doi = ident.removeprefix("doi:")
            doi = doi.split("doi.org/", 1)[-1]
            break
    if doi is None and identifiers:
        doi = identifiers[0]
    if not doi:
        raise ValueError("record without a usable <dc:identifier>")

    rtype = None
    for e in dc.iter(f"{DC_NS}type"):
        if e.text and e.text.strip():
            rtype = e.text.strip().lower()
            break
    year = None
    for e in dc.iter(f"{DC_NS}date"):
        if e.text and e.text.strip()[:4].isdigit():
            year = int(e.text.strip()[:4])
            break
    language = None
    for e in dc.iter(f"{DC_NS}language"):
        if e.text and e.text.strip():
            language = e.text.strip()[:2].lower()
            break
    publisher = None
    for e in dc.iter(f"{DC_NS}publisher"):
        if e.text and e.text.strip():
            publisher = e.text.strip()
            break

    resource_type = "dataset"
    if rtype is not None:
        if rtype not in _DATASET_TYPES:
            return None  # caller counts as filtered, not an error
        resource_type = "dataset"
    return record_from_metadata(doi=doi, title=titles[0], year=year,
                                language=language, publisher=publisher,
                                resource_type=resource_type)


def harvest(endpoint_url: str, set_spec: str | None = None,
            resume_state: str | None = None, stats: HarvestStats | None = None,
            session: requests.Session | None = None):
    """Yield DatasetRecords from an OAI-PMH endpoint (or a local fixture file).

    Resumption tokens are followed until exhausted; `stats.resume_state`
    always holds the last token that can be replayed after a failure.
    """
    if stats is None:
        stats = HarvestStats()
    if session is None:
        session = requests.Session()
    token = resume_state
    stats.resume_state = token
    while True:
        try:
            body = _fetch(endpoint_url, set_spec, token, session)
        except (requests.RequestException, OSError) as exc:
            raise HarvestConnectionError(token, exc) from exc
        root = ET.fromstring(body)
        error = root.find(f"{OAI_NS}error")
        if error is not None:
            raise OaiProtocolError(error.get("code", "unknown"), error.text or "")
        list_records = root.find(f"{OAI_NS}ListRecords")
        if list_records is None:
            raise OaiProtocolError("badVerb", "response without <ListRecords>")
        for element in list_records.findall(f"{OAI_NS}record"):
            try:
                record = _parse_record(element)
            except (ValueError, KeyError):
                stats.skipped += 1
                continue
            if record is None:
                stats.filtered += 1
                continue
            stats.records += 1
            yield record
        token_el = list_records.find(f"{OAI_NS}resumptionToken")
        token = token_el.text.strip() if (token_el is not None and token_el.text
                                          and token_el.text.strip()) else None
        stats.resume_state = token
        if token is None:
            return
