"""Framester-style lexicon held in memory.

The store is loaded from N-Triples and answers the handful of lookups the
labeler needs: verb senses by lemma (optionally restricted to a frame),
frequency ranking, roles of a sense with their interface role, preposition
selections, frame subsumption and role apex.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .errors import CycleError, ParseError, UnknownRole
from .ntriples import RDF_TYPE, RDFS_LABEL, XSD, Iri, Literal, iter_with_lines, serialize_ntriples

FSCHEMA = "https://w3id.org/framester/schema/"
VN31SCHEMA = "https://w3id.org/framester/vn/vn31/schema/"
VNSCHEMA = "https://w3id.org/framester/vn/schema/"
VNDATA = "https://w3id.org/framester/vn/vn31/data/"
VNPREP = "https://w3id.org/framester/vn/vn31/data/preposition/"
FRAME_NS = "https://w3id.org/framester/framenet/abox/frame/"
WN_SCHEMA = "https://w3id.org/framester/wn/wn30/schema/"
SKOS_CLOSE_MATCH = Iri("http://www.w3.org/2004/02/skos/core#closeMatch")

TYPE = Iri(RDF_TYPE)
LABEL = Iri(RDFS_LABEL)
SUBSUMED_UNDER = Iri(FSCHEMA + "subsumedUnder")
SUB_FRAME_OF = Iri(FSCHEMA + "subFrameOf")
INTERFACE_ROLE = Iri(FSCHEMA + "InterfaceRole")
VERB_SENSE_TYPES = frozenset({Iri(VN31SCHEMA + "VerbSense"), Iri(FSCHEMA + "VerbSense")})
ARGUMENT = Iri(VN31SCHEMA + "Argument")
IN_VERB_SENSE = Iri(VN31SCHEMA + "inVerbSense")
IN_VERB_CLASS = Iri(VN31SCHEMA + "inVerbClass")
TAG_COUNT = Iri(WN_SCHEMA + "tagCount")
PREP_SELECTION = Iri(VNSCHEMA + "SensePrepSelection")
HAS_VERB_SENSE = Iri(VNSCHEMA + "hasVerbSense")
HAS_PREPOSITION = Iri(VNSCHEMA + "hasPreposition")
HAS_GENERIC_ARGUMENT = Iri(VNSCHEMA + "hasGenericArgument")

# Q8 filters on xsd:int; the other integer types are accepted as well.
_INT_TYPES = frozenset(Iri(XSD + t) for t in ("int", "integer", "long", "short", "nonNegativeInteger"))


@dataclass(frozen=True)
class VerbSense:
    id: Iri
    lemma: str
    verb_class: Optional[Iri] = None
    tag_count: int = 0
    frames: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class SpecificRole:
    id: Iri
    name: str
    in_sense: Iri
    subsumed_under: Optional[Iri] = None


@dataclass(frozen=True)
class InterfaceRoleId:
    id: Iri
    name: str


@dataclass(frozen=True, order=True)
class PrepSelection:
    sense: Iri
    preposition: str
    argument: Iri


def _preposition_text(term) -> str:
    if isinstance(term, Iri):
        return term.local_name.lower()
    return term.value.strip().lower()


class LexiconStore:
    """Read-only indexed view over a set of lexicon triples.

    Build one with :func:`load_lexicon`; the constructor takes the
    ``(line, triple)`` pairs so errors can point at the source line.
    """

    def __init__(self, numbered_triples=()):
        numbered = list(numbered_triples)
        self._triples = frozenset(t for _, t in numbered)
        self._by_predicate = defaultdict(list)
        for lineno, t in numbered:
            self._by_predicate[t.predicate].append((lineno, t))
        self._build()

    # -- index construction -------------------------------------------------

    def _objects(self, predicate):
        out = defaultdict(list)
        for _, t in self._by_predicate.get(predicate, ()):
            out[t.subject].append(t.object)
        return out

    def _build(self):
        types = self._objects(TYPE)
        labels = self._objects(LABEL)
        self._labels = {s: sorted(str(v) for v in vs if isinstance(v, Literal))
                        for s, vs in labels.items()}

        # subsumedUnder: one parent per role
        self._role_parent = {}
        for lineno, t in self._by_predicate.get(SUBSUMED_UNDER, ()):
            if not isinstance(t.object, Iri):
                raise ParseError(lineno, "subsumedUnder object must be an IRI")
            prev = self._role_parent.get(t.subject)
            if prev is not None and prev != t.object:
                raise ParseError(lineno, f"{t.subject} has more than one subsumedUnder parent")
            self._role_parent[t.subject] = t.object
        self._check_role_chains()

        self._interface_roles = {}
        names = {}
        for lineno, t in self._by_predicate.get(TYPE, ()):
            if t.object != INTERFACE_ROLE or t.subject in self._interface_roles:
                continue
            role = InterfaceRoleId(t.subject, self.name_of(t.subject))
            if role.name in names and names[role.name] != t.subject:
                raise ParseError(lineno, f"interface role name {role.name!r} declared twice")
            names[role.name] = t.subject
            self._interface_roles[t.subject] = role

        # tag counts hang off closeMatch targets (WordNet senses)
        tag_counts = defaultdict(int)
        for lineno, t in self._by_predicate.get(TAG_COUNT, ()):
            if not isinstance(t.object, Literal) or t.object.datatype not in _INT_TYPES:
                continue
            try:
                value = int(t.object.value)
            except ValueError:
                raise ParseError(lineno, f"bad tagCount literal {t.object.value!r}") from None
            tag_counts[t.subject] += value

        close = self._objects(SKOS_CLOSE_MATCH)
        classes = self._objects(IN_VERB_CLASS)
        self._senses = {}
        self._by_lemma = defaultdict(list)
        for lineno, t in self._by_predicate.get(TYPE, ()):
            if t.object not in VERB_SENSE_TYPES or t.subject in self._senses:
                continue
            sense_id = t.subject
            lemmas = self._labels.get(sense_id)
            if not lemmas:
                raise ParseError(lineno, f"verb sense {sense_id} has no rdfs:label")
            targets = [o for o in close.get(sense_id, ()) if isinstance(o, Iri)]
            cls = [o for o in classes.get(sense_id, ()) if isinstance(o, Iri)]
            sense = VerbSense(
                id=sense_id,
                lemma=lemmas[0].lower(),
                verb_class=min(cls) if cls else None,
                tag_count=sum(tag_counts.get(o, 0) for o in set(targets)),
                frames=frozenset(o for o in targets if o not in tag_counts),
            )
            self._senses[sense_id] = sense
            for lemma in {x.lower() for x in lemmas}:
                self._by_lemma[lemma].append(sense)
        for senses in self._by_lemma.values():
            senses.sort(key=lambda s: s.id)

        self._roles_by_sense = defaultdict(list)
        in_sense = self._objects(IN_VERB_SENSE)
        for role_id, ts in types.items():
            if ARGUMENT not in ts:
                continue
            for sense_id in in_sense.get(role_id, ()):
                if not isinstance(sense_id, Iri):
                    continue
                self._roles_by_sense[sense_id].append(SpecificRole(
                    role_id, self.name_of(role_id), sense_id, self._role_parent.get(role_id)))
        for roles in self._roles_by_sense.values():
            roles.sort(key=lambda r: r.id)
        self._known_roles = (set(self._role_parent) | set(self._role_parent.values())
                             | set(self._interface_roles)
                             | {s for s, ts in types.items() if ARGUMENT in ts})

        self._frame_parents = defaultdict(set)
        for lineno, t in self._by_predicate.get(SUB_FRAME_OF, ()):
            if not isinstance(t.object, Iri):
                raise ParseError(lineno, "subFrameOf object must be an IRI")
            self._frame_parents[t.subject].add(t.object)
        self._frame_ancestors = self._close_frames()

        self._preps = defaultdict(set)
        self._build_prep_selections(types)

    def _build_prep_selections(self, types):
        first_line = {}
        for lineno, t in self._by_predicate.get(TYPE, ()):
            if t.object == PREP_SELECTION:
                first_line.setdefault(t.subject, lineno)
        senses = self._objects(HAS_VERB_SENSE)
        preps = self._objects(HAS_PREPOSITION)
        args = self._objects(HAS_GENERIC_ARGUMENT)
        for sel, lineno in first_line.items():
            s_vals, p_vals, a_vals = senses.get(sel), preps.get(sel), args.get(sel)
            if not (s_vals and p_vals and a_vals):
                raise ParseError(lineno, f"incomplete preposition selection {sel}")
            for s in s_vals:
                for p in p_vals:
                    for a in a_vals:
                        if isinstance(s, Iri) and isinstance(a, Iri):
                            self._preps[(s, _preposition_text(p))].add(a)

    def _check_role_chains(self):
        done = set()
        for start in self._role_parent:
            path, seen = [], set()
            node = start
            while node is not None and node not in done:
                if node in seen:
                    loop = path[path.index(node):] + [node]
                    raise CycleError("subsumedUnder", [str(n) for n in loop])
                seen.add(node)
                path.append(node)
                node = self._role_parent.get(node)
            done.update(path)

    def _close_frames(self):
        ancestors = {}
        state = {}

        def visit(frame, stack):
            if state.get(frame) == "done":
                return ancestors[frame]
            if state.get(frame) == "active":
                loop = stack[stack.index(frame):] + [frame]
                raise CycleError("subFrameOf", [str(f) for f in loop])
            state[frame] = "active"
            stack.append(frame)
            acc = set()
            for parent in self._frame_parents.get(frame, ()):
                acc.add(parent)
                acc |= visit(parent, stack)
            stack.pop()
            state[frame] = "done"
            ancestors[frame] = frozenset(acc)
            return ancestors[frame]

        for frame in sorted(self._frame_parents):
            visit(frame, [])
        return ancestors

    # -- plumbing -----------------------------------------------------------

    @property
    def triples(self) -> frozenset:
        return self._triples

    def __len__(self):
        return len(self._triples)

    def serialize(self) -> str:
        return serialize_ntriples(self._triples)

    def name_of(self, iri: Iri) -> str:
        labels = self._labels.get(iri)
        return labels[0] if labels else iri.local_name

    def sense(self, sense_id: Iri) -> Optional[VerbSense]:
        return self._senses.get(sense_id)

    @property
    def senses(self) -> list:
        return sorted(self._senses.values(), key=lambda s: s.id)

    @property
    def interface_roles(self) -> list:
        return sorted(self._interface_roles.values(), key=lambda r: r.id)

    @property
    def frame_edges(self) -> set:
        return {(c, p) for c, ps in self._frame_parents.items() for p in ps}

    def prep_selections(self) -> list:
        return sorted(PrepSelection(s, p, a) for (s, p), args in self._preps.items() for a in args)

    # -- queries ------------------------------------------------------------

    def senses_for_lemma(self, lemma: str) -> list:
        return list(self._by_lemma.get(lemma.lower(), ()))

    def most_frequent_senses(self, lemma: str) -> list:
        """All senses of ``lemma`` ranked by tag count, ties by IRI."""
        return sorted(self.senses_for_lemma(lemma), key=lambda s: (-s.tag_count, s.id))

    def senses_for_lemma_and_frame(self, lemma: str, frame: Iri) -> list:
        return [s for s in self.senses_for_lemma(lemma) if frame in s.frames]

    def roles_for_sense(self, sense: Iri) -> list:
        """(specific role, nearest interface ancestor or None) pairs, by role IRI."""
        out = []
        for role in self._roles_by_sense.get(sense, ()):
            iface = None
            node = self._role_parent.get(role.id)
            while node is not None:
                if node in self._interface_roles:
                    iface = self._interface_roles[node]
                    break
                node = self._role_parent.get(node)
            out.append((role, iface))
        return out

    def prep_argument(self, sense: Iri, preposition: str) -> list:
        return sorted(self._preps.get((sense, preposition), ()))

    def frame_subsumes(self, general: Iri, specific: Iri) -> bool:
        return general in self._frame_ancestors.get(specific, ())

    def knows_role(self, role: Iri) -> bool:
        return role in self._known_roles

    def role_apex(self, role: Iri) -> Iri:
        if not self.knows_role(role):
            raise UnknownRole(role)
        while role in self._role_parent:
            role = self._role_parent[role]
        return role


def load_lexicon(ntriples_text: str) -> LexiconStore:
    return LexiconStore(iter_with_lines(ntriples_text))


def merge_lexicons(*texts: str) -> LexiconStore:
    """Load several N-Triples documents into one store."""
    numbered = []
    for text in texts:
        numbered.extend(iter_with_lines(text))
    return LexiconStore(numbered)
