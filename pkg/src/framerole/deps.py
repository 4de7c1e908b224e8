"""Dependency graphs: CoreNLP triple lines and CoNLL-U in, spans out."""

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, TreeError, UnknownToken

# nmod/obl subtypes that are not prepositions
_NON_PREP_SUBTYPES = frozenset({"poss", "tmod", "npmod", "agent", "relcl"})
_CASE_RELATIONS = ("case",)
_MWE_RELATIONS = ("mwe", "fixed")


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str = ""
    upos: str = "X"
    char_start: Optional[int] = None
    char_end: Optional[int] = None

    def __post_init__(self):
        if not self.form:
            raise ValueError(f"token {self.index} has an empty form")
        if not self.lemma:
            object.__setattr__(self, "lemma", self.form.lower())


@dataclass(frozen=True)
class DepEdge:
    relation: str
    head: int
    dependent: int

    @property
    def base(self) -> str:
        return self.relation.split(":", 1)[0]

    @property
    def subtype(self) -> Optional[str]:
        parts = self.relation.split(":", 1)
        return parts[1] if len(parts) == 2 else None


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    text: str


@dataclass(frozen=True)
class DepGraph:
    sentence_id: str
    tokens: tuple
    edges: tuple
    _tok: dict = field(init=False, repr=False, compare=False)
    _head_edge: dict = field(init=False, repr=False, compare=False)
    _children: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(sorted(self.tokens, key=lambda t: t.index)))
        object.__setattr__(self, "edges", tuple(self.edges))
        tok = {}
        for t in self.tokens:
            if t.index < 1 or t.index in tok:
                raise TreeError(f"{self.sentence_id}: bad or duplicate token index {t.index}")
            tok[t.index] = t
        head_edge, children = {}, {}
        roots = []
        for e in self.edges:
            if e.dependent < 1 or e.head < 0 or e.dependent == e.head:
                raise TreeError(f"{self.sentence_id}: invalid edge {e}")
            if e.dependent not in tok or (e.head and e.head not in tok):
                raise TreeError(f"{self.sentence_id}: edge {e} references a missing token")
            if e.dependent in head_edge:
                raise TreeError(f"{self.sentence_id}: token {e.dependent} has two heads")
            head_edge[e.dependent] = e
            children.setdefault(e.head, []).append(e)
            if e.head == 0:
                roots.append(e.dependent)
        if self.tokens:
            if len(roots) != 1:
                raise TreeError(f"{self.sentence_id}: expected exactly one root, found {len(roots)}")
            missing = sorted(set(tok) - set(head_edge))
            if missing:
                raise TreeError(f"{self.sentence_id}: tokens without a head: {missing}")
            _check_acyclic(self.sentence_id, head_edge)
        elif self.edges:
            raise TreeError(f"{self.sentence_id}: edges without tokens")
        for kids in children.values():
            kids.sort(key=lambda e: e.dependent)
        object.__setattr__(self, "_tok", tok)
        object.__setattr__(self, "_head_edge", head_edge)
        object.__setattr__(self, "_children", children)

    def token(self, index: int) -> Token:
        try:
            return self._tok[index]
        except KeyError:
            raise UnknownToken(index) from None

    def __contains__(self, index):
        return index in self._tok

    @property
    def root(self) -> Optional[int]:
        kids = self._children.get(0)
        return kids[0].dependent if kids else None

    def head_edge(self, index: int) -> Optional[DepEdge]:
        return self._head_edge.get(index)

    def children(self, index: int) -> list:
        """Outgoing edges of ``index`` in dependent order."""
        return list(self._children.get(index, ()))

    def edge(self, head: int, dependent: int) -> Optional[DepEdge]:
        e = self._head_edge.get(dependent)
        return e if e is not None and e.head == head else None


def _check_acyclic(sid, head_edge):
    done = set()
    for start in head_edge:
        seen = []
        node = start
        while node and node not in done:
            if node in seen:
                raise TreeError(f"{sid}: cycle through tokens {seen[seen.index(node):]}")
            seen.append(node)
            node = head_edge[node].head
        done.update(seen)


# -- CoreNLP triple lines ---------------------------------------------------

_TRIPLE_LINE = re.compile(r"^\s*([^,\s]+)\s*,\s*(.+?)-(\d+)\s*,\s*(.+?)-(\d+)\s*,?\s*$")


def parse_corenlp_triples(text: str, sentence_id: str = "1") -> DepGraph:
    """Parse ``rel, Form-Index, Form-Index`` lines into a graph."""
    forms = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _TRIPLE_LINE.match(line)
        if m is None:
            raise ParseError(lineno, f"expected 'rel, Form-Index, Form-Index': {line.strip()}")
        rel, hform, hidx, dform, didx = m.groups()
        hidx, didx = int(hidx), int(didx)
        for form, idx in ((hform, hidx), (dform, didx)):
            if idx == 0:
                if form != "ROOT":
                    raise ParseError(lineno, f"index 0 is reserved for ROOT, got {form!r}")
                continue
            if forms.setdefault(idx, form) != form:
                raise ParseError(lineno, f"token {idx} named both {forms[idx]!r} and {form!r}")
        if didx == 0:
            raise ParseError(lineno, "ROOT cannot be a dependent")
        edges.append(DepEdge(rel, hidx, didx))
    tokens = [Token(i, f) for i, f in sorted(forms.items())]
    graph = DepGraph(sentence_id, tuple(tokens), tuple(edges))
    if tokens and graph.root is None:
        raise TreeError(f"{sentence_id}: no root edge")
    return graph


def split_triple_blocks(text: str) -> list:
    """Split a multi-sentence triple file on blank lines."""
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip():
            cur.append(line)
        elif cur:
            blocks.append("\n".join(cur))
            cur = []
    if cur:
        blocks.append("\n".join(cur))
    return blocks


def to_corenlp_triples(graph: DepGraph) -> str:
    def mention(i):
        return "ROOT-0" if i == 0 else f"{graph.token(i).form}-{i}"

    return "".join(f"{e.relation}, {mention(e.head)}, {mention(e.dependent)}\n" for e in graph.edges)


# -- CoNLL-U ------------------------------------------------------------------

def parse_conllu(text: str) -> list:
    graphs = []
    rows, sent_id, start_line = [], None, None

    def flush():
        nonlocal rows, sent_id
        if rows:
            sid = sent_id if sent_id is not None else str(len(graphs) + 1)
            try:
                graphs.append(DepGraph(sid, tuple(t for t, _ in rows), tuple(e for _, e in rows)))
            except TreeError as exc:
                raise ParseError(start_line, str(exc)) from None
        rows, sent_id = [], None

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            if rows:
                raise ParseError(lineno, "comment inside a sentence")
            m = re.match(r"#\s*sent_id\s*=\s*(.*\S)", line)
            if m:
                sent_id = m.group(1)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(lineno, f"expected 10 tab-separated columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue
        if not rows:
            start_line = lineno
        try:
            idx, head = int(cols[0]), int(cols[6])
        except ValueError:
            raise ParseError(lineno, "ID and HEAD must be integers") from None
        lemma = "" if cols[2] == "_" and cols[1] != "_" else cols[2]
        try:
            tok = Token(idx, cols[1], lemma, cols[3] if cols[3] != "_" else "X")
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        rows.append((tok, DepEdge(cols[7], head, idx)))
    flush()
    return graphs


def to_conllu(graphs) -> str:
    out = []
    for g in graphs:
        out.append(f"# sent_id = {g.sentence_id}\n")
        for t in g.tokens:
            e = g.head_edge(t.index)
            out.append("\t".join([str(t.index), t.form, t.lemma, t.upos, "_", "_",
                                  str(e.head), e.relation, "_", "_"]) + "\n")
        out.append("\n")
    return "".join(out)


# -- spans and prepositions -------------------------------------------------

def subtree_indices(graph: DepGraph, head: int, exclude=()) -> frozenset:
    """Exact index set of ``head`` and all its transitive dependents.

    Direct children of ``head`` attached by a relation in ``exclude`` are
    dropped together with their own subtrees.
    """
    graph.token(head)
    seen = {head}
    stack = [head]
    while stack:
        node = stack.pop()
        for e in graph.children(node):
            if node == head and e.base in exclude:
                continue
            if e.dependent not in seen:
                seen.add(e.dependent)
                stack.append(e.dependent)
    return frozenset(seen)


def subtree_yield(graph: DepGraph, head: int, exclude=()) -> Span:
    """Minimal contiguous token range covering the subtree of ``head``."""
    idx = subtree_indices(graph, head, exclude)
    lo, hi = min(idx), max(idx)
    words = [t.form for t in graph.tokens if lo <= t.index <= hi]
    return Span(lo, hi, " ".join(words))


def preposition_of(graph: DepGraph, head: int, dependent: int) -> Optional[str]:
    """Lowercased preposition marking ``dependent`` under ``head``, if any.

    Looks for a ``case`` child first (joining fixed/mwe parts, e.g.
    ``out_of``); otherwise falls back to a collapsed relation suffix such as
    ``nmod:into``.
    """
    edge = graph.edge(head, dependent)
    for e in graph.children(dependent):
        if e.base in _CASE_RELATIONS:
            parts = [graph.token(e.dependent).lemma.lower()]
            parts += [graph.token(m.dependent).lemma.lower()
                      for m in graph.children(e.dependent) if m.base in _MWE_RELATIONS]
            return "_".join(parts)
    if edge is not None and edge.base in ("nmod", "obl"):
        sub = edge.subtype
        if sub and sub not in _NON_PREP_SUBTYPES:
            return sub.lower()
    return None
