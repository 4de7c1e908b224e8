import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_text, vn
from framerole import data_path
from framerole.deps import DepGraph, DepEdge, Span, Token
from framerole.errors import ColumnCountError, ParseError
from framerole.heuristics import InterfaceRole
from framerole.scorer import (GOLD_HEADER, ROOT, GoldRow, PredicateArgSet, ScoreReport, Unmapped,
                              assignments_to_sets, map_vn_to_pb, read_conll2009, read_gold_tsv,
                              read_semlink, score, score_strict, to_semantic_deps,
                              write_conll2009, write_gold_tsv)
from framerole.srl import LabelKind, RoleAssignment, RoleLabel

WORKED_GOLD = [PredicateArgSet("1", 2, "verb.01", ((1, "ARG0"), (3, "ARG1"), (4, "ARGM-TMP")))]
WORKED_PRED = [PredicateArgSet("1", 2, "verb.02", ((1, "ARG0"), (3, "ARG1"), (4, "ARGM-LOC")))]


def test_worked_example_in_memory():
    r = score(WORKED_GOLD, WORKED_PRED)
    assert r.labeled_precision == 0.5 and r.unlabeled_precision == 1.0
    assert (r.labeled_correct, r.unlabeled_correct, r.predicted_total, r.gold_total) == (2, 4, 4, 4)


def test_worked_example_from_files():
    gold = read_conll2009(fixture_text("worked_gold.conll09"))
    pred = read_conll2009(fixture_text("worked_pred.conll09"))
    assert gold == WORKED_GOLD and pred == WORKED_PRED


def test_to_semantic_deps_counts():
    deps = to_semantic_deps([PredicateArgSet("s", 1, "verb.01", ((2, "ARG0"), (5, "ARG1"), (9, "ARGM-TMP")))])
    assert len(deps) == 4 and sum(d.target == ROOT for d in deps) == 1
    assert len(to_semantic_deps([PredicateArgSet("s", 1, "v")])) == 1
    two = WORKED_GOLD + [PredicateArgSet("1", 5, "other.01", ((1, "ARG0"),))]
    assert len(to_semantic_deps(two)) == 4 + 2


def test_two_predicate_hand_count():
    gold = [PredicateArgSet("s", 2, "s1", ((1, "A0"), (3, "A1"))),
            PredicateArgSet("s", 8, "s2", ((4, "A0"), (5, "A1"), (6, "A2")))]
    pred = [PredicateArgSet("s", 2, "s1", ((1, "A0"), (3, "A2"))),
            PredicateArgSet("s", 8, "s2", ((4, "A0"), (7, "A1")))]
    r = score(gold, pred)
    assert r.labeled_precision == 4 / 6 and r.labeled_recall == 4 / 7
    assert r.unlabeled_precision == 5 / 6 and r.unlabeled_recall == 5 / 7


def test_empty_sides():
    r = score([], [])
    assert r.labeled_f1 == 0.0 and r.predicted_total == 0
    assert score(WORKED_GOLD, []).labeled_recall == 0.0


def test_duplicate_targets_rejected():
    with pytest.raises(ValueError):
        PredicateArgSet("s", 1, "v", ((2, "A0"), (2, "A1")))
    with pytest.raises(ValueError):
        score(WORKED_GOLD + WORKED_GOLD, [])


def test_report_format():
    text = score(WORKED_GOLD, WORKED_PRED).format()
    lines = text.splitlines()
    assert lines[0] == "labeled_precision\t50.00"
    assert "unlabeled_precision\t100.00" in lines
    assert [ln.split("\t")[0] for ln in lines] == list(ScoreReport.METRICS + ScoreReport.COUNTS)


# -- random predicate sets ---------------------------------------------------------

_labels = st.sampled_from(["ARG0", "ARG1", "ARG2", "ARGM-TMP"])


@st.composite
def pred_sets(draw, max_preds=4, max_args=6):
    keys = draw(st.sets(st.tuples(st.sampled_from(["a", "b"]), st.integers(1, 6)), max_size=max_preds))
    out = []
    for sid, tok in sorted(keys):
        targets = draw(st.sets(st.integers(1, 8), max_size=max_args))
        args = tuple((t, draw(_labels)) for t in sorted(targets))
        out.append(PredicateArgSet(sid, tok, draw(st.sampled_from(["v.01", "v.02"])), args))
    return out


def _oracle(gold, pred):
    def deps(sets):
        out = set()
        for s in sets:
            out.add((s.sentence_id, s.predicate_token, 0, s.sense))
            out |= {(s.sentence_id, s.predicate_token, t, l) for t, l in s.args}
        return out

    g, p = deps(gold), deps(pred)
    unlabeled = len({d[:3] for d in g} & {d[:3] for d in p})
    return ScoreReport.from_counts(len(g & p), unlabeled, len(p), len(g))


@settings(max_examples=200, deadline=None)
@given(pred_sets())
def test_identity_scores_one(x):
    r = score(x, x)
    if x:
        assert all(getattr(r, m) == 1.0 for m in ScoreReport.METRICS)


@settings(max_examples=200, deadline=None)
@given(pred_sets(), pred_sets())
def test_labeled_bounded_by_unlabeled(gold, pred):
    r = score(gold, pred)
    assert r.labeled_precision <= r.unlabeled_precision
    assert r.labeled_recall <= r.unlabeled_recall
    assert r.labeled_correct <= r.unlabeled_correct <= min(r.predicted_total, r.gold_total)


@settings(max_examples=200, deadline=None)
@given(pred_sets(), pred_sets())
def test_matches_bruteforce_oracle(gold, pred):
    assert score(gold, pred) == _oracle(gold, pred)


@settings(max_examples=200, deadline=None)
@given(pred_sets(), pred_sets())
def test_swap_symmetry(gold, pred):
    a, b = score(gold, pred), score(pred, gold)
    assert (a.labeled_precision, a.labeled_recall) == (b.labeled_recall, b.labeled_precision)
    assert (a.unlabeled_precision, a.unlabeled_recall) == (b.unlabeled_recall, b.unlabeled_precision)


@settings(max_examples=200, deadline=None)
@given(pred_sets())
def test_deps_size(x):
    assert len(to_semantic_deps(x)) == len(x) + sum(len(s.args) for s in x)


def _graph(sid, n=8):
    tokens = [Token(i, f"w{i}", upos="NOUN") for i in range(1, n + 1)]
    edges = [DepEdge("root", 0, 1)] + [DepEdge("dep", 1, i) for i in range(2, n + 1)]
    return DepGraph(sid, tokens, edges)


@settings(max_examples=200, deadline=None)
@given(pred_sets())
def test_conll2009_roundtrip(x):
    graphs = [_graph("a"), _graph("b")]
    back = read_conll2009(write_conll2009(x, graphs, sent_ids=True))
    assert sorted(back, key=_k) == sorted(x, key=_k)
    # without sent_id comments, sentences are numbered in file order
    positional = read_conll2009(write_conll2009(x, graphs))
    rename = {"1": "a", "2": "b"}
    assert sorted((PredicateArgSet(rename[s.sentence_id], s.predicate_token, s.sense, s.args)
                   for s in positional), key=_k) == sorted(x, key=_k)


def _k(s):
    return (s.sentence_id, s.predicate_token)


def test_conll2009_no_predicates_and_errors():
    row = "1\tHi\thi\thi\tX\tX\t_\t_\t0\t0\troot\troot\t_\t_"
    assert read_conll2009(row + "\n") == []
    with pytest.raises(ColumnCountError):
        read_conll2009(row + "\tARG0\n")
    with pytest.raises(ParseError):
        read_conll2009("1\tHi\n")
    with pytest.raises(ValueError):
        write_conll2009([PredicateArgSet("zz", 1, "v")], [_graph("a")])


# -- strict scoring and SemLink ------------------------------------------------------

def _assign(lemma, role, text, sid="s1", pred=3, head=None):
    words = text.split()
    head = head or len(words)
    return RoleAssignment(sid, pred, lemma, None, RoleLabel(LabelKind.SPECIFIC, role),
                          head, Span(1, len(words), text))


GOLD_THEME = GoldRow("s1", "total", "54.1-1", "Theme", "ARG1", "The Canadian pig herd")


@pytest.mark.parametrize("text, ok", [
    ("The Canadian pig herd", True),
    ("Canadian pig", False),
    ("The Canadian pig herd totaled", True),
    ("the canadian pig herd", False),
])
def test_strict_containment(text, ok):
    r = score_strict([GOLD_THEME], [_assign("total", "Theme", text)])
    assert r.labeled_correct == int(ok)
    assert r.unlabeled_correct == r.labeled_correct


def test_strict_requires_role_and_lemma():
    assert score_strict([GOLD_THEME], [_assign("total", "Value", GOLD_THEME.filler)]).labeled_correct == 0
    assert score_strict([GOLD_THEME], [_assign("say", "Theme", GOLD_THEME.filler)]).labeled_correct == 0
    assert score_strict([GOLD_THEME], [_assign("Total", "Theme", GOLD_THEME.filler)]).labeled_correct == 1


def test_strict_one_to_one():
    preds = [_assign("total", "Theme", GOLD_THEME.filler, head=1),
             _assign("total", "Theme", GOLD_THEME.filler, head=2)]
    r = score_strict([GOLD_THEME], preds)
    assert r.labeled_correct == 1 and r.labeled_precision == 0.5 and r.labeled_recall == 1.0


def test_strict_uses_maximum_matching():
    g1 = GoldRow("s1", "total", "54.1-1", "Theme", "ARG1", "herd")
    g2 = GoldRow("s1", "total", "54.1-1", "Theme", "ARG1", "pig herd")
    # greedy on p1 could grab g2 and leave p2 unmatched
    p1 = _assign("total", "Theme", "pig herd", head=1)
    p2 = _assign("total", "Theme", "herd", head=2)
    assert score_strict([g2, g1], [p1, p2]).labeled_correct == 2


def test_strict_with_semlink():
    semlink = read_semlink(open(data_path("semlink.tsv"), encoding="utf-8").read())
    r = score_strict([GOLD_THEME], [_assign("total", "Theme", GOLD_THEME.filler)], semlink)
    assert r.labeled_correct == 1
    r = score_strict([GOLD_THEME], [_assign("total", "Value", GOLD_THEME.filler)], semlink)
    assert r.labeled_correct == 0


def test_semlink_pig_herd_rows():
    semlink = read_semlink("verb_class\tvn_role\tpb_role\n37.7-1\tTopic\tARG1\n37.7-1\tAgent\tARG0\n"
                           "54.1-1\tTheme\tARG1\n54.1-1\tValue\tARG2\n")
    rows = [("37.7-1", "Topic"), ("37.7-1", "Agent"), ("54.1-1", "Value"), ("99.9", "Agent")]
    assert map_vn_to_pb(rows, semlink) == ["ARG1", "ARG0", "ARG2", Unmapped("99.9", "Agent")]


def test_semlink_conflict():
    with pytest.raises(ParseError):
        read_semlink("1\tA\tARG0\n1\tA\tARG1\n")
    with pytest.raises(ParseError):
        read_semlink("1\tA\n")


def test_gold_tsv_pig_herd_rows():
    rows = read_gold_tsv(fixture_text("pig_herd_gold.tsv"))
    assert [(r.verb, r.verb_class, r.vn_role, r.pb_role) for r in rows] == [
        ("Say", "37.7-1", "Topic", "ARG1"), ("Say", "37.7-1", "Agent", "ARG0"),
        ("Total", "54.1-1", "Theme", "ARG1"), ("Total", "54.1-1", "Value", "ARG2")]
    assert read_gold_tsv("\t".join(GOLD_HEADER) + "\n") == []
    with pytest.raises(ParseError):
        read_gold_tsv("\t".join(GOLD_HEADER) + "\ns\tv\tc\tr\tAGENT\tx\n")


_cell = st.text(alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")),
                min_size=1, max_size=8)
gold_rows = st.builds(GoldRow, _cell, _cell, _cell, _cell,
                      st.sampled_from(["ARG0", "ARG1", "ARG5", "ARGA", "ARGM-TMP", "ARGM-LOC"]), _cell)


def test_gold_tsv_50_rows():
    rows = [GoldRow(f"s{i}", f"v{i % 7}", f"{i}.1", f"R{i % 3}", f"ARG{i % 6}", f"w{i} x{i}")
            for i in range(50)]
    assert read_gold_tsv(write_gold_tsv(rows)) == rows


@settings(max_examples=200, deadline=None)
@given(st.lists(gold_rows, max_size=10))
def test_gold_tsv_roundtrip_property(rows):
    assert read_gold_tsv(write_gold_tsv(rows)) == rows


def test_assignments_to_sets_uses_sense_local_name(toy):
    a = RoleAssignment("1", 3, "conquer", vn("Conquer_42030000"),
                       RoleLabel.specific(vn("Conquer_42030000_Agent"), "Agent"), 2, Span(1, 2, "x y"))
    b = RoleAssignment("1", 6, "glow", None, RoleLabel.fallback(InterfaceRole.AGENT), 5, Span(5, 5, "z"))
    assert assignments_to_sets([a, b]) == [PredicateArgSet("1", 3, "Conquer_42030000", ((2, "Agent"),)),
                                           PredicateArgSet("1", 6, "glow", ((5, "Agent"),))]
