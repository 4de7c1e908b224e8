"""Role-oriented RDF graphs built from role assignments."""

from dataclasses import dataclass, field
from urllib.parse import quote

from .errors import MismatchedSentence
from .ntriples import RDF_TYPE, RDFS_LABEL, Iri, Literal, Triple, serialize_ntriples
from .srl import LabelKind

DEFAULT_BASE = "https://w3id.org/framerole"


@dataclass(frozen=True)
class KnowledgeGraph:
    triples: frozenset
    namespaces: dict = field(default_factory=dict, compare=False, hash=False)

    def __len__(self):
        return len(self.triples)


def _seg(value) -> str:
    return quote(str(value), safe="")


def build_graph(assignments, graph, base: str = DEFAULT_BASE) -> KnowledgeGraph:
    """One occurrence node per predicate token, one filler node per argument.

    Per argument: a role triple, an rdfs:label with the filler text and a
    ``start:end`` span literal; per occurrence: one rdf:type triple.
    """
    base = base.rstrip("/")
    span_pred = Iri(f"{base}/span")
    span_type = Iri(f"{base}/TokenSpan")
    sid = graph.sentence_id
    triples = set()
    typed = set()
    for a in assignments:
        if a.sentence_id != sid:
            raise MismatchedSentence(f"assignment for {a.sentence_id!r} given with graph {sid!r}")
        occ = Iri(f"{base}/occ/{_seg(sid)}/{a.predicate_token}")
        if occ not in typed:
            cls = a.sense if a.sense is not None else Iri(f"{base}/Occurrence")
            triples.add(Triple(occ, Iri(RDF_TYPE), cls))
            typed.add(occ)
        if a.label.kind is LabelKind.FALLBACK or a.label.iri is None:
            role = Iri(f"{base}/role/{_seg(a.label.name)}")
        else:
            role = a.label.iri
        filler = Iri(f"{base}/filler/{_seg(sid)}/{a.predicate_token}/{a.filler_head}")
        triples.add(Triple(occ, role, filler))
        triples.add(Triple(filler, Iri(RDFS_LABEL), Literal(a.filler.text)))
        triples.add(Triple(filler, span_pred, Literal(f"{a.filler.start}:{a.filler.end}", span_type)))
    return KnowledgeGraph(frozenset(triples), {"fr": base + "/"})


def serialize(kg: KnowledgeGraph, format: str = "ntriples") -> str:
    if format != "ntriples":
        raise ValueError(f"unsupported format {format!r}")
    return serialize_ntriples(kg.triples)
