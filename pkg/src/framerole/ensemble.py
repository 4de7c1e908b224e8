"""Union of two systems' role assignments, and the assignment TSV format."""

from dataclasses import dataclass

from .deps import Span
from .errors import ParseError
from .ntriples import Iri
from .srl import LabelKind, RoleAssignment, RoleLabel

BASE_COLUMNS = ("sentence_id", "predicate_token", "predicate_lemma", "role_name",
                "filler_start", "filler_end", "filler_text")
EXTRA_COLUMNS = ("filler_head", "label_kind", "role_iri", "sense")


@dataclass(frozen=True)
class SystemOutput:
    name: str
    assignments: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))
        keys = [a.key for a in self.assignments]
        if len(set(keys)) != len(keys):
            raise ValueError(f"{self.name}: duplicate (sentence, predicate, filler_head) keys")


def _order(a):
    return (a.sentence_id, a.predicate_token, a.filler_head)


def merge(primary: SystemOutput, secondary: SystemOutput, prefer: str = "primary") -> SystemOutput:
    """Everything in ``primary`` plus the secondary assignments it lacks.

    On a key clash the ``prefer`` side ('primary' or 'secondary') wins.
    """
    if prefer not in ("primary", "secondary"):
        raise ValueError("prefer must be 'primary' or 'secondary'")
    base, extra = (primary, secondary) if prefer == "primary" else (secondary, primary)
    merged = {a.key: a for a in base.assignments}
    for a in extra.assignments:
        merged.setdefault(a.key, a)
    name = f"{primary.name}+{secondary.name}"
    return SystemOutput(name, tuple(sorted(merged.values(), key=_order)))


# -- TSV ---------------------------------------------------------------------

def write_assignments_tsv(assignments) -> str:
    """Write the 7 interchange columns plus the 4 columns needed to read
    the assignments back losslessly."""
    out = ["\t".join(BASE_COLUMNS + EXTRA_COLUMNS) + "\n"]
    for a in assignments:
        cells = [a.sentence_id, str(a.predicate_token), a.predicate_lemma, a.label.name,
                 str(a.filler.start), str(a.filler.end), a.filler.text,
                 str(a.filler_head), a.label.kind.value,
                 a.label.iri.value if a.label.iri else "_",
                 a.sense.value if a.sense else "_"]
        if any("\t" in c or "\n" in c for c in cells):
            raise ValueError(f"tab or newline in assignment cell: {cells}")
        out.append("\t".join(cells) + "\n")
    return "".join(out)


def read_assignments_tsv(text: str) -> list:
    """Read 7- or 11-column assignment rows.

    Rows from other systems carry only the 7 base columns; their filler
    head defaults to the last token of the span and the label is taken as a
    specific role without an IRI.
    """
    lines = text.splitlines()
    if not lines:
        return []
    header = tuple(lines[0].split("\t"))
    if header not in (BASE_COLUMNS, BASE_COLUMNS + EXTRA_COLUMNS):
        raise ParseError(1, "unrecognised assignment header")
    width = len(header)
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != width:
            raise ParseError(lineno, f"expected {width} columns, got {len(cols)}")
        try:
            pred, start, end = int(cols[1]), int(cols[4]), int(cols[5])
            span = Span(start, end, cols[6])
            if width == len(BASE_COLUMNS):
                head, label, sense = end, RoleLabel(LabelKind.SPECIFIC, cols[3]), None
            else:
                head = int(cols[7])
                iri = Iri(cols[9]) if cols[9] != "_" else None
                label = RoleLabel(LabelKind(cols[8]), cols[3], iri)
                sense = Iri(cols[10]) if cols[10] != "_" else None
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        if not start <= head <= end:
            raise ParseError(lineno, f"filler head {head} outside span {start}-{end}")
        out.append(RoleAssignment(cols[0], pred, cols[2], sense, label, head, span))
    return out
