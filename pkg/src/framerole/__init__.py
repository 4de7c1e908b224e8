"""Knowledge-based semantic role labeling over a Framester-style lexicon.

Dependency parses and frame annotations go in; role assignments, RDF
graphs and CoNLL-2009-style scores come out.
"""

from importlib import resources

from .deps import DepEdge, DepGraph, Span, Token, parse_conllu, parse_corenlp_triples, subtree_yield
from .ensemble import SystemOutput, merge
from .heuristics import DEFAULT_TABLE, InterfaceRole, load_role_table
from .kg import build_graph, serialize
from .lexicon import LexiconStore, load_lexicon
from .scorer import PredicateArgSet, ScoreReport, score, score_strict
from .srl import FrameAnnotation, RoleAssignment, label_sentence, select_verb_sense

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Filesystem path of a bundled data file (e.g. ``toy_lexicon.nt``)."""
    return str(resources.files(__name__).joinpath("data", name))


def load_toy_lexicon() -> LexiconStore:
    with open(data_path("toy_lexicon.nt"), encoding="utf-8") as fh:
        return load_lexicon(fh.read())
