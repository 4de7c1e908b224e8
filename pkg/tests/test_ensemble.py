import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import vn
from framerole.deps import Span
from framerole.ensemble import (BASE_COLUMNS, SystemOutput, merge, read_assignments_tsv,
                                write_assignments_tsv)
from framerole.errors import ParseError
from framerole.heuristics import InterfaceRole
from framerole.scorer import PredicateArgSet, assignments_to_sets, score
from framerole.srl import LabelKind, RoleAssignment, RoleLabel


def A(role, head, pred=3, sid="s", text=None, kind=LabelKind.SPECIFIC):
    return RoleAssignment(sid, pred, "conquer", vn("Conquer_42030000"),
                          RoleLabel(kind, role, vn(f"Conquer_42030000_{role}") if kind is LabelKind.SPECIFIC else None),
                          head, Span(head, head, text or f"w{head}"))


def test_complementary_roles_unioned():
    out = merge(SystemOutput("tf", [A("Agent", 2)]), SystemOutput("fred", [A("Theme", 5)]))
    assert [a.role_name for a in out.assignments] == ["Agent", "Theme"]
    assert out.name == "tf+fred"


def test_empty_secondary():
    p = SystemOutput("tf", [A("Agent", 2), A("Patient", 5)])
    assert merge(p, SystemOutput("x", [])).assignments == p.assignments


def test_conflict_primary_wins():
    p = SystemOutput("tf", [A("Agent", 2), A("Patient", 5)])
    s = SystemOutput("fred", [A("Theme", 5), A("Instrument", 7)])
    out = merge(p, s)
    assert [(a.filler_head, a.role_name) for a in out.assignments] == [
        (2, "Agent"), (5, "Patient"), (7, "Instrument")]
    flipped = merge(p, s, prefer="secondary")
    assert [(a.filler_head, a.role_name) for a in flipped.assignments] == [
        (2, "Agent"), (5, "Theme"), (7, "Instrument")]
    with pytest.raises(ValueError):
        merge(p, s, prefer="neither")


def test_duplicate_keys_rejected():
    with pytest.raises(ValueError):
        SystemOutput("x", [A("Agent", 2), A("Patient", 2)])


# -- TSV ---------------------------------------------------------------------

def test_tsv_roundtrip_full_columns():
    rows = [A("Agent", 2), RoleAssignment("s", 3, "conquer", None,
                                          RoleLabel.fallback(InterfaceRole.OBLIQUE), 7,
                                          Span(6, 7, "with weapons"))]
    assert read_assignments_tsv(write_assignments_tsv(rows)) == rows


def test_seven_column_ingest():
    text = "\t".join(BASE_COLUMNS) + "\ns1\t3\tconquer\tTheme\t4\t5\tthe Incas\n"
    (a,) = read_assignments_tsv(text)
    assert a.filler_head == 5 and a.role_name == "Theme" and a.sense is None
    assert a.filler == Span(4, 5, "the Incas")


@pytest.mark.parametrize("body", ["s1\t3\tconquer\tTheme\t4\t5\n", "s1\tx\tconquer\tTheme\t4\t5\tt\n"])
def test_tsv_errors(body):
    with pytest.raises(ParseError) as info:
        read_assignments_tsv("\t".join(BASE_COLUMNS) + "\n" + body)
    assert info.value.line == 2


def test_bad_header():
    with pytest.raises(ParseError):
        read_assignments_tsv("a\tb\n")
    assert read_assignments_tsv("") == []


def test_writer_rejects_tabs():
    with pytest.raises(ValueError):
        write_assignments_tsv([A("Agent", 2, text="a\tb")])


# -- laws ---------------------------------------------------------------------

_roles = st.sampled_from(["Agent", "Patient", "Theme", "Instrument"])


@st.composite
def outputs(draw, name="x"):
    keys = draw(st.sets(st.tuples(st.sampled_from(["s", "t"]), st.integers(1, 4), st.integers(1, 6)),
                        max_size=8))
    return SystemOutput(name, [A(draw(_roles), h, pred=p, sid=sid) for sid, p, h in sorted(keys)])


def _keyed(out):
    return {a.key: a for a in out.assignments}


def _sets(out):
    return assignments_to_sets(out.assignments)


@settings(max_examples=200, deadline=None)
@given(outputs("a"), outputs("b"))
def test_merge_superset(a, b):
    m = _keyed(merge(a, b))
    assert _keyed(a).items() <= m.items()
    assert set(m) == set(_keyed(a)) | set(_keyed(b))


@settings(max_examples=200, deadline=None)
@given(outputs("a"))
def test_merge_idempotent_and_identity(a):
    empty = SystemOutput("e", [])
    assert _keyed(merge(a, a)) == _keyed(a)
    assert _keyed(merge(a, empty)) == _keyed(a)
    assert _keyed(merge(empty, a)) == _keyed(a)


@st.composite
def gold_sets(draw):
    keys = draw(st.sets(st.tuples(st.sampled_from(["s", "t"]), st.integers(1, 4)), max_size=4))
    return [PredicateArgSet(sid, p, "Conquer_42030000",
                            tuple((h, draw(_roles)) for h in sorted(draw(st.sets(st.integers(1, 6), max_size=4)))))
            for sid, p in sorted(keys)]


@settings(max_examples=200, deadline=None)
@given(outputs("a"), outputs("b"), gold_sets())
def test_recall_monotone(a, b, gold):
    before, after = score(gold, _sets(a)), score(gold, _sets(merge(a, b)))
    assert after.labeled_recall >= before.labeled_recall
    assert after.unlabeled_recall >= before.unlabeled_recall
