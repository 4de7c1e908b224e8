"""Verb sense selection, role compatibility and sentence labeling."""

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .deps import DepGraph, Span, preposition_of, subtree_yield
from .errors import ParseError
from .heuristics import CORE_ROLES, InterfaceRole, RoleTable
from .lexicon import InterfaceRoleId, LexiconStore, SpecificRole
from .ntriples import Iri

# relations whose dependent is never a predicate
_NON_PREDICATE_RELATIONS = frozenset({"aux", "auxpass", "cop"})
_OBLIQUE_RELATIONS = frozenset({"nmod", "obl"})
# the preposition marks the role, it is not part of the filler
FILLER_EXCLUDE = ("case",)


@dataclass(frozen=True)
class FrameAnnotation:
    sentence_id: str
    predicate_token: int
    frames: frozenset


class Provenance(str, Enum):
    MONOSEMOUS = "Monosemous"
    FRAME_MATCHED = "FrameMatched"
    MOST_FREQUENT_FALLBACK = "MostFrequentFallback"
    RANKED_INTERSECTION = "RankedIntersection"


@dataclass(frozen=True)
class SenseSelection:
    sense: Iri
    provenance: Provenance


class LabelKind(str, Enum):
    SPECIFIC = "specific"
    LEXICON = "lexicon"      # interface role taken from the lexicon
    FALLBACK = "fallback"    # syntactic interface role, no lexicon support


@dataclass(frozen=True)
class RoleLabel:
    kind: LabelKind
    name: str
    iri: Optional[Iri] = None

    @classmethod
    def specific(cls, iri, name):
        return cls(LabelKind.SPECIFIC, name, iri)

    @classmethod
    def from_lexicon(cls, role: InterfaceRoleId):
        return cls(LabelKind.LEXICON, role.name, role.id)

    @classmethod
    def fallback(cls, role: InterfaceRole):
        return cls(LabelKind.FALLBACK, InterfaceRole(role).value)


@dataclass(frozen=True)
class RoleAssignment:
    sentence_id: str
    predicate_token: int
    predicate_lemma: str
    sense: Optional[Iri]
    label: RoleLabel
    filler_head: int
    filler: Span

    @property
    def key(self):
        return (self.sentence_id, self.predicate_token, self.filler_head)

    @property
    def role_name(self) -> str:
        return self.label.name


def assignment_order(a: RoleAssignment):
    return (a.predicate_token, a.filler_head)


# -- sense selection ----------------------------------------------------------

def most_specific_frames(frames, store: LexiconStore) -> frozenset:
    """Frames not strictly subsuming any other member of ``frames``."""
    frames = set(frames)
    return frozenset(f for f in frames
                     if not any(g != f and store.frame_subsumes(f, g) for g in frames))


def select_verb_sense(lemma: str, frames, store: LexiconStore) -> Optional[SenseSelection]:
    senses = store.senses_for_lemma(lemma)
    if not senses:
        return None
    if len(senses) == 1:
        return SenseSelection(senses[0].id, Provenance.MONOSEMOUS)
    ranking = store.most_frequent_senses(lemma)
    if not frames:
        return SenseSelection(ranking[0].id, Provenance.MOST_FREQUENT_FALLBACK)
    candidates = set()
    for frame in most_specific_frames(frames, store):
        candidates.update(s.id for s in store.senses_for_lemma_and_frame(lemma, frame))
    if not candidates:
        return SenseSelection(ranking[0].id, Provenance.MOST_FREQUENT_FALLBACK)
    if len(candidates) == 1:
        return SenseSelection(next(iter(candidates)), Provenance.FRAME_MATCHED)
    for sense in ranking:
        if sense.id in candidates:
            return SenseSelection(sense.id, Provenance.RANKED_INTERSECTION)
    raise AssertionError("frame candidates are always senses of the lemma")


# -- compatibility --------------------------------------------------------------

def check_compatibility(c1: InterfaceRole,
                        v1: Optional[InterfaceRoleId],
                        r1: Optional[SpecificRole],
                        prep: Optional[str],
                        sense: Optional[Iri],
                        store: LexiconStore) -> RoleLabel:
    """Resolve the label for one argument from its syntactic and lexicon roles.

    Rules are tried in order: no lexicon role -> c1; matching core
    interface role -> the specific role; oblique with a preposition -> the
    argument selected by that preposition; Agent/Undergoer against a
    lexicon role whose hierarchy tops out at Theme -> that lexicon role;
    otherwise c1.
    """
    c1 = InterfaceRole(c1)
    if v1 is None and r1 is None:
        return RoleLabel.fallback(c1)
    v1_name = v1.name if v1 is not None else None
    if c1 in CORE_ROLES and v1_name == c1.value and r1 is not None:
        return RoleLabel.specific(r1.id, r1.name)
    if c1 is InterfaceRole.OBLIQUE and v1_name == InterfaceRole.OBLIQUE.value and prep:
        args = store.prep_argument(sense, prep) if sense is not None else []
        if args:
            return RoleLabel.specific(args[0], store.name_of(args[0]))
        return RoleLabel.fallback(c1)
    if c1 in (InterfaceRole.AGENT, InterfaceRole.UNDERGOER) and v1 is not None and v1_name != c1.value:
        if store.name_of(store.role_apex(v1.id)) == "Theme":
            return RoleLabel.from_lexicon(v1)
    return RoleLabel.fallback(c1)


def _pick_pair(c1, pairs, used, store):
    """Index of the lexicon pair to align with ``c1``, or None."""
    for i, (_, v1) in enumerate(pairs):
        if i not in used and v1 is not None and v1.name == c1.value:
            return i
    if c1 in (InterfaceRole.AGENT, InterfaceRole.UNDERGOER):
        for i, (_, v1) in enumerate(pairs):
            if i not in used and v1 is not None and store.name_of(store.role_apex(v1.id)) == "Theme":
                return i
    return None


# -- sentence labeling ----------------------------------------------------------

_SUFFIXES = (("ied", "y"), ("ies", "y"), ("ing", ""), ("ing", "e"), ("ed", ""), ("ed", "e"),
             ("es", ""), ("s", ""), ("d", ""))


def candidate_lemmas(form: str) -> list:
    """Cheap English verb lemma guesses for tokens without morphology."""
    w = form.lower()
    out = [w]
    for suffix, repl in _SUFFIXES:
        if w.endswith(suffix) and len(w) > len(suffix) + 1:
            stem = w[:-len(suffix)]
            out.append(stem + repl)
            if suffix in ("ed", "ing") and len(stem) > 2 and stem[-1] == stem[-2]:
                out.append(stem[:-1])
    seen = set()
    return [x for x in out if not (x in seen or seen.add(x))]


def _resolve_lemma(token, store):
    if token.upos != "X":
        return token.lemma
    for cand in candidate_lemmas(token.form):
        if store.senses_for_lemma(cand):
            return cand
    return token.lemma


def _predicates(graph, frames_by_token, store, table):
    out = []
    for tok in graph.tokens:
        head = graph.head_edge(tok.index)
        if head is not None and head.base in _NON_PREDICATE_RELATIONS:
            continue
        if tok.index in frames_by_token or tok.upos == "VERB":
            out.append(tok)
        elif tok.upos == "X":
            # no POS available: a token heading arguments whose lemma is a known verb
            if (any(table.lookup(e.relation) for e in graph.children(tok.index))
                    and store.senses_for_lemma(_resolve_lemma(tok, store))):
                out.append(tok)
    return out


def label_sentence(graph: DepGraph, annotations, store: LexiconStore,
                   table: RoleTable, use_frames: bool = True) -> list:
    frames_by_token = defaultdict(set)
    for ann in annotations:
        if ann.sentence_id == graph.sentence_id:
            frames_by_token[ann.predicate_token].update(ann.frames)

    out = []
    for tok in _predicates(graph, frames_by_token, store, table):
        lemma = _resolve_lemma(tok, store)
        frames = frames_by_token.get(tok.index, set()) if use_frames else set()
        selection = select_verb_sense(lemma, frames, store)
        sense = selection.sense if selection else None
        pairs = store.roles_for_sense(sense) if sense is not None else []
        used = set()
        for edge in graph.children(tok.index):
            c1 = table.lookup(edge.relation)
            if c1 is None:
                continue
            prep = None
            if edge.base in _OBLIQUE_RELATIONS:
                prep = preposition_of(graph, tok.index, edge.dependent)
            i = _pick_pair(c1, pairs, used, store)
            r1, v1 = pairs[i] if i is not None else (None, None)
            label = check_compatibility(c1, v1, r1, prep, sense, store)
            if i is not None and label.kind is not LabelKind.FALLBACK:
                used.add(i)
            out.append(RoleAssignment(graph.sentence_id, tok.index, lemma, sense, label,
                                      edge.dependent,
                                      subtree_yield(graph, edge.dependent, FILLER_EXCLUDE)))
    out.sort(key=assignment_order)
    return out


# -- frame annotation files -------------------------------------------------

def read_frame_annotations(text: str) -> list:
    """``sentence_id<TAB>token_index<TAB>frame_iri`` lines, one frame each."""
    grouped = defaultdict(set)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise ParseError(lineno, "expected sentence_id, token_index, frame_iri")
        try:
            grouped[(parts[0], int(parts[1]))].add(Iri(parts[2].strip()))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return [FrameAnnotation(sid, idx, frozenset(fs)) for (sid, idx), fs in sorted(grouped.items())]
