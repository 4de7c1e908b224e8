"""Dependency relation -> interface role table."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import ConfigError


class InterfaceRole(str, Enum):
    AGENT = "Agent"
    UNDERGOER = "Undergoer"
    RECIPIENT = "Recipient"
    EVENTUALITY = "Eventuality"
    OBLIQUE = "Oblique"

    def __str__(self):
        return self.value


# interface roles that take part in direct name matching (all but Oblique)
CORE_ROLES = frozenset({InterfaceRole.AGENT, InterfaceRole.UNDERGOER,
                        InterfaceRole.RECIPIENT, InterfaceRole.EVENTUALITY})


@dataclass(frozen=True)
class Rule:
    pattern: str
    role: Optional[InterfaceRole]

    def matches(self, relation: str) -> bool:
        if self.pattern.endswith("*"):
            return relation.startswith(self.pattern[:-1])
        return relation == self.pattern or relation.startswith(self.pattern + ":")


@dataclass(frozen=True)
class RoleTable:
    rules: tuple

    def __post_init__(self):
        if not self.rules:
            raise ValueError("role table is empty")

    def lookup(self, relation: str) -> Optional[InterfaceRole]:
        for rule in self.rules:
            if rule.matches(relation):
                return rule.role
        return None

    def dump(self) -> str:
        return "".join(f"{r.pattern}\t{r.role.value if r.role else BLOCK}\n" for r in self.rules)


# UD v2 subtypes come first so that e.g. nsubj:pass does not fall into nsubj.
DEFAULT_RULES = (
    ("nsubj:pass", "Undergoer"),
    ("csubj:pass", "Undergoer"),
    ("nsubj", "Agent"),
    ("agent", "Agent"),
    ("csubj", "Agent"),
    ("nsubjpass", "Undergoer"),
    ("csubjpass", "Undergoer"),
    ("dobj", "Undergoer"),
    ("obj", "Undergoer"),
    ("iobj", "Recipient"),
    ("ccomp", "Eventuality"),
    ("xcomp", "Eventuality"),
    ("advcl", "Eventuality"),
    ("nmod:agent", "Agent"),
    ("obl:agent", "Agent"),
    ("nmod:poss", None),
    ("nmod:tmod", None),
    ("nmod", "Oblique"),
    ("obl", "Oblique"),
)


# a rule mapping to BLOCK stops the search: the relation is not an argument
BLOCK = "_"


def _default_table():
    return RoleTable(tuple(Rule(p, InterfaceRole(r) if r else None) for p, r in DEFAULT_RULES))


def load_role_table(config_text: Optional[str] = None) -> RoleTable:
    """Parse ``relation<TAB>Role`` lines; None gives the built-in table.

    A role of ``_`` marks the relation as a non-argument, shadowing any
    broader pattern listed after it.
    """
    if config_text is None:
        return DEFAULT_TABLE
    rules = []
    for lineno, line in enumerate(config_text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.strip().split("\t")
        if len(parts) != 2:
            raise ConfigError(lineno, "expected 'relation<TAB>InterfaceRole'")
        pattern, name = parts[0].strip(), parts[1].strip()
        if name == BLOCK:
            rules.append(Rule(pattern, None))
            continue
        try:
            role = InterfaceRole(name)
        except ValueError:
            allowed = ", ".join(r.value for r in InterfaceRole)
            raise ConfigError(lineno, f"{name!r} is not an interface role ({allowed})") from None
        rules.append(Rule(pattern, role))
    if not rules:
        raise ConfigError(0, "role table has no rules")
    return RoleTable(tuple(rules))


def interface_role_of(table: RoleTable, relation: str) -> Optional[InterfaceRole]:
    return table.lookup(relation)


DEFAULT_TABLE = _default_table()
