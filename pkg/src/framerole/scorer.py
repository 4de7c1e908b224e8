"""Semantic-dependency scoring in the CoNLL-2009 style, plus a strict
filler-containment scorer and the file formats both need.
"""

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ColumnCountError, ParseError

ROOT = 0
_PB_ROLE = re.compile(r"^(ARG[0-5A]|ARGM-[A-Za-z0-9-]+|C-ARG.*|R-ARG.*)$")


class SemanticDependency(NamedTuple):
    sentence_id: str
    predicate_token: int
    target: int          # ROOT (0) for the sense dependency
    label: str


@dataclass(frozen=True)
class PredicateArgSet:
    sentence_id: str
    predicate_token: int
    sense: str
    args: tuple = ()     # (token index, label) pairs

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(sorted((int(i), str(l)) for i, l in self.args)))
        targets = [i for i, _ in self.args]
        if len(set(targets)) != len(targets):
            raise ValueError(f"duplicate argument token for predicate {self.predicate_token}")


@dataclass(frozen=True)
class ScoreReport:
    labeled_correct: int
    unlabeled_correct: int
    predicted_total: int
    gold_total: int
    labeled_precision: float
    labeled_recall: float
    labeled_f1: float
    unlabeled_precision: float
    unlabeled_recall: float
    unlabeled_f1: float

    @classmethod
    def from_counts(cls, labeled, unlabeled, predicted, gold):
        lp, lr = _ratio(labeled, predicted), _ratio(labeled, gold)
        up, ur = _ratio(unlabeled, predicted), _ratio(unlabeled, gold)
        return cls(labeled, unlabeled, predicted, gold, lp, lr, _f1(lp, lr), up, ur, _f1(up, ur))

    METRICS = ("labeled_precision", "labeled_recall", "labeled_f1",
               "unlabeled_precision", "unlabeled_recall", "unlabeled_f1")
    COUNTS = ("labeled_correct", "unlabeled_correct", "predicted_total", "gold_total")

    def format(self) -> str:
        """Fixed ``metric<TAB>value`` layout, percentages to two decimals."""
        lines = [f"{m}\t{100 * getattr(self, m):.2f}" for m in self.METRICS]
        lines += [f"{c}\t{getattr(self, c)}" for c in self.COUNTS]
        return "\n".join(lines) + "\n"


def _ratio(a, b):
    return a / b if b else 0.0


def _f1(p, r):
    return 2 * p * r / (p + r) if p + r else 0.0


# -- CoNLL-2009-style scoring --------------------------------------------------

def to_semantic_deps(sets) -> list:
    out = []
    for s in sets:
        out.append(SemanticDependency(s.sentence_id, s.predicate_token, ROOT, s.sense))
        out.extend(SemanticDependency(s.sentence_id, s.predicate_token, i, l) for i, l in s.args)
    return out


def _keyed(deps, side):
    table = {}
    for d in deps:
        key = (d.sentence_id, d.predicate_token, d.target)
        if key in table:
            raise ValueError(f"{side}: duplicate dependency {key}")
        table[key] = d.label
    return table


def score(gold, predicted) -> ScoreReport:
    g = _keyed(to_semantic_deps(gold), "gold")
    p = _keyed(to_semantic_deps(predicted), "predicted")
    unlabeled = labeled = 0
    for key, label in p.items():
        if key in g:
            unlabeled += 1
            labeled += g[key] == label
    return ScoreReport.from_counts(labeled, unlabeled, len(p), len(g))


# -- strict filler scoring -------------------------------------------------------

@dataclass(frozen=True)
class GoldRow:
    sentence_id: str
    verb: str
    verb_class: str
    vn_role: str
    pb_role: str
    filler: str

    def __post_init__(self):
        if not _PB_ROLE.match(self.pb_role):
            raise ValueError(f"not a PropBank role: {self.pb_role!r}")


def _strict_match(gold: GoldRow, pred, semlink=None) -> bool:
    if gold.sentence_id != pred.sentence_id:
        return False
    if gold.verb.lower() != pred.predicate_lemma.lower():
        return False
    if semlink is not None:
        if semlink.get((gold.verb_class, pred.role_name)) != gold.pb_role:
            return False
    elif gold.vn_role != pred.role_name:
        return False
    have = set(pred.filler.text.split())
    return all(w in have for w in gold.filler.split())


def _max_matching(n_left, edges):
    """Size of a maximum bipartite matching; ``edges[i]`` lists right nodes."""
    match_right = {}

    def augment(i, seen):
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_right or augment(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    return sum(augment(i, set()) for i in range(n_left))


def score_strict(gold, predicted, semlink=None) -> ScoreReport:
    """Count a prediction correct when its filler holds every gold word.

    Sentence, predicate lemma and role must agree; with ``semlink`` the
    predicted VerbNet role is mapped through the gold row's verb class and
    compared with the gold PropBank role instead. Each gold row and each
    prediction is used at most once (maximum matching).
    """
    gold, predicted = list(gold), list(predicted)
    edges = [[j for j, g in enumerate(gold) if _strict_match(g, p, semlink)] for p in predicted]
    correct = _max_matching(len(predicted), edges)
    return ScoreReport.from_counts(correct, correct, len(predicted), len(gold))


# -- SemLink -------------------------------------------------------------------

@dataclass(frozen=True)
class Unmapped:
    verb_class: str
    vn_role: str


class SemLinkMap(dict):
    """(verb_class, vn_role) -> PropBank role."""


def read_semlink(text: str) -> SemLinkMap:
    """Three tab-separated columns ``verb_class vn_role pb_role``; ``#`` comments."""
    out = SemLinkMap()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) != 3:
            raise ParseError(lineno, "expected verb_class, vn_role, pb_role")
        if lineno == 1 and cols[0] == "verb_class":
            continue
        key = (cols[0], cols[1])
        if key in out and out[key] != cols[2]:
            raise ParseError(lineno, f"conflicting mapping for {key}")
        out[key] = cols[2]
    return out


def map_vn_to_pb(rows, semlink) -> list:
    return [semlink.get((c, r), Unmapped(c, r)) for c, r in rows]


# -- gold TSV --------------------------------------------------------------------

GOLD_HEADER = ("sentence_id", "verb", "verb_class", "vn_role", "pb_role", "filler")


def read_gold_tsv(text: str) -> list:
    rows = []
    lines = text.splitlines()
    if not lines:
        return rows
    if tuple(lines[0].split("\t")) != GOLD_HEADER:
        raise ParseError(1, "expected header " + "\t".join(GOLD_HEADER))
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise ParseError(lineno, f"expected 6 columns, got {len(cols)}")
        try:
            rows.append(GoldRow(*cols))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return rows


def write_gold_tsv(rows) -> str:
    out = ["\t".join(GOLD_HEADER) + "\n"]
    for r in rows:
        cells = (r.sentence_id, r.verb, r.verb_class, r.vn_role, r.pb_role, r.filler)
        if any("\t" in c or "\n" in c for c in cells):
            raise ValueError(f"tab or newline inside a gold cell: {cells}")
        out.append("\t".join(cells) + "\n")
    return "".join(out)


# -- CoNLL-2009 columns ------------------------------------------------------------

_FIXED_COLS = 14


def read_conll2009(text: str) -> list:
    """Predicate-argument sets from CoNLL-2009 rows.

    Sentences are numbered from 1 in file order unless a ``# sent_id = X``
    comment precedes them.
    """
    sets = []
    block, sent_id, n_sent = [], None, 0

    def flush():
        nonlocal block, sent_id, n_sent
        if not block:
            return
        n_sent += 1
        sid = sent_id if sent_id is not None else str(n_sent)
        preds = [(ln, cols) for ln, cols in block if cols[12] == "Y"]
        for ln, cols in block:
            if len(cols) - _FIXED_COLS != len(preds):
                raise ColumnCountError(ln, f"{len(cols) - _FIXED_COLS} APRED columns for {len(preds)} predicates")
        for k, (ln, pcols) in enumerate(preds):
            args = [(int(cols[0]), cols[_FIXED_COLS + k]) for _, cols in block
                    if cols[_FIXED_COLS + k] != "_"]
            try:
                sets.append(PredicateArgSet(sid, int(pcols[0]), pcols[13], tuple(args)))
            except ValueError as exc:
                raise ParseError(ln, str(exc)) from None
        block, sent_id = [], None

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*sent_id\s*=\s*(.*\S)", line)
            if m and not block:
                sent_id = m.group(1)
            continue
        cols = line.split("\t")
        if len(cols) < _FIXED_COLS:
            raise ParseError(lineno, f"expected at least {_FIXED_COLS} columns, got {len(cols)}")
        if cols[12] not in ("Y", "_"):
            raise ParseError(lineno, f"FILLPRED must be Y or _, got {cols[12]!r}")
        if not cols[0].isdigit():
            raise ParseError(lineno, f"bad token id {cols[0]!r}")
        block.append((lineno, cols))
    flush()
    return sets


def write_conll2009(sets, graphs, sent_ids: bool = False) -> str:
    """Render predicate sets over the tokens of ``graphs`` (one block each).

    Predicted columns mirror the gold ones. With ``sent_ids`` each block is
    preceded by a ``# sent_id`` comment so non-positional ids survive.
    """
    by_sentence = {}
    for s in sets:
        by_sentence.setdefault(s.sentence_id, []).append(s)
    known = {g.sentence_id for g in graphs}
    stray = sorted(set(by_sentence) - known)
    if stray:
        raise ValueError(f"predicate sets for unknown sentences: {stray}")
    out = []
    for g in graphs:
        preds = sorted(by_sentence.get(g.sentence_id, ()), key=lambda s: s.predicate_token)
        if len({p.predicate_token for p in preds}) != len(preds):
            raise ValueError(f"{g.sentence_id}: two sets for one predicate")
        pred_at = {p.predicate_token: p for p in preds}
        arg_maps = [dict(p.args) for p in preds]
        for p, amap in zip(preds, arg_maps):
            missing = [i for i in list(amap) + [p.predicate_token] if i not in g]
            if missing:
                raise ValueError(f"{g.sentence_id}: tokens {missing} not in sentence")
        if sent_ids:
            out.append(f"# sent_id = {g.sentence_id}\n")
        for t in g.tokens:
            e = g.head_edge(t.index)
            head = str(e.head) if e else "0"
            rel = e.relation if e else "_"
            p = pred_at.get(t.index)
            cols = [str(t.index), t.form, t.lemma, t.lemma, t.upos, t.upos, "_", "_",
                    head, head, rel, rel, "Y" if p else "_", p.sense if p else "_"]
            cols += [amap.get(t.index, "_") for amap in arg_maps]
            out.append("\t".join(cols) + "\n")
        out.append("\n")
    return "".join(out)


def assignments_to_sets(assignments) -> list:
    """Group role assignments into predicate sets keyed by argument head.

    The sense label is the local name of the sense IRI, or the lemma when no
    sense was selected.
    """
    grouped = {}
    for a in assignments:
        key = (a.sentence_id, a.predicate_token)
        sense = a.sense.local_name if a.sense is not None else a.predicate_lemma
        entry = grouped.setdefault(key, [sense, []])
        entry[1].append((a.filler_head, a.role_name))
    return [PredicateArgSet(sid, tok, sense, tuple(args))
            for (sid, tok), (sense, args) in grouped.items()]
