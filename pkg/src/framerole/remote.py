"""Fetch lexicon fragments from a SPARQL endpoint, with an on-disk cache.

Each lookup the labeler needs has a CONSTRUCT template returning the
triples :func:`framerole.lexicon.load_lexicon` understands. Responses are
cached as ``<sha256>.nt`` files keyed by endpoint and query text.
"""

import hashlib
import logging
import os
import re
import tempfile
from pathlib import Path

import requests

from .errors import CacheWriteError, NetworkError
from .lexicon import (FSCHEMA, HAS_GENERIC_ARGUMENT, HAS_PREPOSITION, HAS_VERB_SENSE,
                      IN_VERB_CLASS, IN_VERB_SENSE, PREP_SELECTION, SKOS_CLOSE_MATCH,
                      SUB_FRAME_OF, SUBSUMED_UNDER, TAG_COUNT, VN31SCHEMA)
from .ntriples import RDF_TYPE, Iri, parse_ntriples

log = logging.getLogger(__name__)

_PREFIXES = f"""PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
PREFIX fschema: <{FSCHEMA}>
PREFIX vn31schema: <{VN31SCHEMA}>
"""

TEMPLATES = {
    # senses of a lemma, with their class, closeMatch targets and tag counts
    "Q1bis": """CONSTRUCT {{
  ?s a ?t ; rdfs:label ?l ; <{cls}> ?c ; <{cm}> ?m . ?m <{tc}> ?f .
}} WHERE {{
  ?s rdfs:label ?l ; a ?t .
  VALUES ?t {{ fschema:VerbSense vn31schema:VerbSense }}
  FILTER regex(str(?l), "^{lemma}$", "i")
  OPTIONAL {{ ?s <{cls}> ?c }}
  OPTIONAL {{ ?s <{cm}> ?m OPTIONAL {{ ?m <{tc}> ?f }} }}
}}""",
    # senses of a lemma mapped to one frame
    "Q3": """CONSTRUCT {{ ?s a vn31schema:VerbSense ; rdfs:label ?l ; <{cm}> <{frame}> . }}
WHERE {{ ?s rdfs:label ?l ; a vn31schema:VerbSense ; <{cm}> <{frame}> .
  FILTER regex(str(?l), "^{lemma}$", "i") }}""",
    # roles of a sense and their whole subsumedUnder chain
    "Q4": """CONSTRUCT {{
  ?r a vn31schema:Argument ; <{ins}> <{sense}> ; rdfs:label ?rl .
  ?x <{sub}> ?y . ?y a ?yt ; rdfs:label ?yl .
}} WHERE {{
  ?r a vn31schema:Argument ; <{ins}> <{sense}> .
  OPTIONAL {{ ?r rdfs:label ?rl }}
  OPTIONAL {{ ?r <{sub}>* ?x . ?x <{sub}> ?y .
             OPTIONAL {{ ?y a ?yt }} OPTIONAL {{ ?y rdfs:label ?yl }} }}
}}""",
    # frequency of the senses of a lemma
    "Q8": """CONSTRUCT {{ ?s a vn31schema:VerbSense ; rdfs:label ?l ; <{cm}> ?w . ?w <{tc}> ?f . }}
WHERE {{ ?s rdfs:label ?l ; a vn31schema:VerbSense ; <{cm}> ?w . ?w <{tc}> ?f .
  FILTER regex(str(?l), "^{lemma}$", "i") }}""",
    # preposition selections of a sense
    "prep": """CONSTRUCT {{ ?p a <{psel}> ; <{hvs}> <{sense}> ; <{hp}> ?x ; <{hga}> ?a . }}
WHERE {{ ?p a <{psel}> ; <{hvs}> <{sense}> ; <{hp}> ?x ; <{hga}> ?a . }}""",
    # ancestors of a frame
    "frames": """CONSTRUCT {{ ?a <{sf}> ?b . }}
WHERE {{ <{frame}> <{sf}>* ?a . ?a <{sf}> ?b . }}""",
}

_FIXED = {
    "cls": IN_VERB_CLASS.value, "cm": SKOS_CLOSE_MATCH.value, "tc": TAG_COUNT.value,
    "ins": IN_VERB_SENSE.value, "sub": SUBSUMED_UNDER.value, "psel": PREP_SELECTION.value,
    "hvs": HAS_VERB_SENSE.value, "hp": HAS_PREPOSITION.value, "hga": HAS_GENERIC_ARGUMENT.value,
    "sf": SUB_FRAME_OF.value,
}

_LEMMA_OK = re.compile(r"^[A-Za-z][A-Za-z_'-]*$")


def build_query(name: str, **params) -> str:
    """Render a named template; lemma, sense and frame are the parameters."""
    if name not in TEMPLATES:
        raise ValueError(f"unknown query template {name!r}")
    if "lemma" in params:
        if not _LEMMA_OK.match(params["lemma"]):
            raise ValueError(f"unsafe lemma {params['lemma']!r}")
        params["lemma"] = params["lemma"].lower()
    for key in ("sense", "frame"):
        if key in params:
            params[key] = Iri(str(params[key])).value
    try:
        return _PREFIXES + TEMPLATES[name].format(**_FIXED, **params)
    except KeyError as exc:
        raise ValueError(f"template {name!r} needs parameter {exc.args[0]!r}") from None


def cache_key(endpoint_url: str, query: str) -> str:
    return hashlib.sha256(f"{endpoint_url}\n{query}".encode("utf-8")).hexdigest()


def remote_fetch(endpoint_url: str, query: str, cache_dir, timeout: float = 30.0) -> str:
    """Return N-Triples for ``query``, from the cache when possible.

    A response is parsed before it is cached, so a malformed body raises
    ParseError and leaves the cache untouched.
    """
    cache_dir = Path(cache_dir)
    path = cache_dir / f"{cache_key(endpoint_url, query)}.nt"
    if path.exists():
        log.debug("cache hit %s", path.name)
        return path.read_bytes().decode("utf-8")
    try:
        resp = requests.get(endpoint_url, params={"query": query},
                            headers={"Accept": "application/n-triples, text/plain"},
                            timeout=timeout)
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise NetworkError(f"{endpoint_url}: {exc}") from exc
    body = resp.content.decode("utf-8")
    parse_ntriples(body)
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        with os.fdopen(fd, "wb") as fh:
            fh.write(body.encode("utf-8"))
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheWriteError(f"cannot write {path}: {exc}") from exc
    return body


def fetch_lemma_vocabulary(endpoint_url: str, lemmas, cache_dir, frames=()) -> str:
    """Everything the labeler needs for ``lemmas``, as one N-Triples text."""
    chunks = []
    for lemma in sorted(set(lemmas)):
        if not _LEMMA_OK.match(lemma):
            continue
        text = remote_fetch(endpoint_url, build_query("Q1bis", lemma=lemma), cache_dir)
        chunks.append(text)
        senses = sorted({t.subject for t in parse_ntriples(text)
                         if t.predicate.value == RDF_TYPE})
        for sense in senses:
            chunks.append(remote_fetch(endpoint_url, build_query("Q4", sense=sense), cache_dir))
            chunks.append(remote_fetch(endpoint_url, build_query("prep", sense=sense), cache_dir))
    for frame in sorted(set(frames)):
        chunks.append(remote_fetch(endpoint_url, build_query("frames", frame=frame), cache_dir))
    return "".join(c if c.endswith("\n") or not c else c + "\n" for c in chunks)
