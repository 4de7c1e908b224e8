"""Command-line entry point: ``framerole label|score|merge|lexicon``."""

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import data_path
from .deps import parse_conllu, parse_corenlp_triples, split_triple_blocks
from .ensemble import (BASE_COLUMNS, SystemOutput, merge, read_assignments_tsv,
                       write_assignments_tsv)
from .errors import (CacheWriteError, ConfigError, CycleError, MismatchedSentence, NetworkError,
                     ParseError, TreeError, UnknownRole)
from .heuristics import load_role_table
from .kg import DEFAULT_BASE, build_graph, serialize
from .lexicon import load_lexicon, merge_lexicons
from .scorer import (assignments_to_sets, read_conll2009, read_gold_tsv,
                     read_semlink, score, score_strict, write_conll2009)
from .srl import candidate_lemmas, label_sentence, read_frame_annotations

log = logging.getLogger("framerole")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2
BUILTIN_PREFIX = "builtin:"


class UsageError(Exception):
    pass


def _read(path) -> str:
    if str(path).startswith(BUILTIN_PREFIX):
        name = str(path)[len(BUILTIN_PREFIX):]
        path = data_path({"toy": "toy_lexicon.nt", "semlink": "semlink.tsv"}.get(name, name))
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_graphs(text: str, fmt: str):
    if fmt == "auto":
        first = next((ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
        fmt = "conllu" if "\t" in first or not first else "triples"
    if fmt == "conllu":
        return parse_conllu(text)
    return [parse_corenlp_triples(block, str(i)) for i, block in enumerate(split_triple_blocks(text), 1)]


def _verb_lemmas(graphs):
    lemmas = set()
    for g in graphs:
        for t in g.tokens:
            if t.upos == "VERB":
                lemmas.add(t.lemma)
            elif t.upos == "X":
                lemmas.update(candidate_lemmas(t.form))
    return lemmas


# -- subcommands ---------------------------------------------------------------

def cmd_label(args):
    graphs = _load_graphs(_read(args.input), args.input_format)
    annotations = []
    if args.frames and not args.no_frames:
        annotations = read_frame_annotations(_read(args.frames))
    table = load_role_table(_read(args.role_table) if args.role_table else None)
    lexicon_text = _read(args.lexicon)
    if args.endpoint:
        from .remote import fetch_lemma_vocabulary

        cache = args.cache_dir or os.environ.get("FRAMEROLE_CACHE") or ".framerole-cache"
        frames = {f for a in annotations for f in a.frames}
        fetched = fetch_lemma_vocabulary(args.endpoint, _verb_lemmas(graphs), cache, frames)
        store = merge_lexicons(lexicon_text, fetched)
    else:
        store = load_lexicon(lexicon_text)

    def work(graph):
        return label_sentence(graph, annotations, store, table, use_frames=not args.no_frames)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(work, graphs))

    if args.emit == "tsv":
        text = write_assignments_tsv([a for res in results for a in res])
    elif args.emit == "conll09":
        text = write_conll2009(assignments_to_sets([a for res in results for a in res]), graphs)
    else:
        text = "".join(serialize(build_graph(res, g, args.base)) for g, res in zip(graphs, results))
        text = "".join(sorted(set(text.splitlines(keepends=True))))
    _write(text, args.out)
    return EXIT_OK


def _read_predictions(text):
    if text.split("\n", 1)[0].startswith("\t".join(BASE_COLUMNS)):
        return assignments_to_sets(read_assignments_tsv(text))
    return read_conll2009(text)


def cmd_score(args):
    gold_text, pred_text = _read(args.gold), _read(args.pred)
    if args.strict:
        semlink = read_semlink(_read(args.semlink)) if args.semlink else None
        report = score_strict(read_gold_tsv(gold_text), read_assignments_tsv(pred_text), semlink)
    else:
        if args.semlink:
            raise UsageError("--semlink applies to --strict scoring only")
        report = score(read_conll2009(gold_text), _read_predictions(pred_text))
    _write(report.format(), args.out)
    if args.figure:
        from .plotting import plot_scores

        plot_scores({Path(args.pred).stem: report}, args.figure, title=args.title)
    return EXIT_OK


def cmd_merge(args):
    primary = SystemOutput(Path(args.primary).stem, read_assignments_tsv(_read(args.primary)))
    secondary = SystemOutput(Path(args.secondary).stem, read_assignments_tsv(_read(args.secondary)))
    merged = merge(primary, secondary, prefer=args.prefer)
    _write(write_assignments_tsv(merged.assignments), args.out)
    return EXIT_OK


def validate_store(store) -> list:
    """Problems that a successful load does not already rule out."""
    problems = []
    sense_ids = {s.id for s in store.senses}
    referenced = {t.object for t in store.triples
                  if t.predicate.value.endswith("inVerbSense")}
    for sense_id in sorted(referenced - sense_ids, key=str):
        problems.append(f"inVerbSense target {sense_id} is not a declared verb sense")
    for sel in store.prep_selections():
        if sel.sense not in sense_ids:
            problems.append(f"preposition selection for unknown sense {sel.sense}")
    return problems


def cmd_lexicon(args):
    store = load_lexicon(_read(args.path))
    problems = validate_store(store)
    for p in problems:
        print(f"error: {p}", file=sys.stderr)
    if problems:
        return EXIT_INTERNAL
    n_roles = sum(len(store.roles_for_sense(s.id)) for s in store.senses)
    print(f"ok\t{len(store)} triples\t{len(store.senses)} senses\t{n_roles} roles\t"
          f"{len(store.interface_roles)} interface roles\t{len(store.frame_edges)} frame edges\t"
          f"{len(store.prep_selections())} preposition selections")
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="framerole", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    lab = sub.add_parser("label", help="label sentences with semantic roles")
    lab.add_argument("--input", required=True, help="CoNLL-U or CoreNLP triple file")
    lab.add_argument("--input-format", choices=("auto", "conllu", "triples"), default="auto")
    lab.add_argument("--lexicon", required=True,
                     help="N-Triples lexicon; 'builtin:toy' for the bundled one")
    lab.add_argument("--role-table", help="relation<TAB>InterfaceRole overrides")
    lab.add_argument("--frames", help="sentence_id<TAB>token<TAB>frame_iri annotations")
    lab.add_argument("--no-frames", action="store_true",
                     help="ignore frame annotations; most frequent sense for polysemous verbs")
    lab.add_argument("--emit", choices=("kg", "tsv", "conll09"), default="kg")
    lab.add_argument("--base", default=DEFAULT_BASE, help="namespace for generated IRIs")
    lab.add_argument("--endpoint", help="SPARQL endpoint that augments the local lexicon")
    lab.add_argument("--cache-dir", help="response cache (default $FRAMEROLE_CACHE)")
    lab.add_argument("--jobs", type=int, default=1)
    lab.add_argument("--out")
    lab.set_defaults(func=cmd_label)

    sc = sub.add_parser("score", help="score predictions against gold")
    sc.add_argument("--gold", required=True)
    sc.add_argument("--pred", required=True)
    sc.add_argument("--strict", action="store_true",
                    help="gold TSV vs assignment TSV, filler containment")
    sc.add_argument("--semlink", help="verb_class<TAB>vn_role<TAB>pb_role map (with --strict)")
    sc.add_argument("--figure", help="also render the metrics as a bar chart")
    sc.add_argument("--title")
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_score)

    mg = sub.add_parser("merge", help="union of two assignment TSVs")
    mg.add_argument("--primary", required=True)
    mg.add_argument("--secondary", required=True)
    mg.add_argument("--prefer", choices=("primary", "secondary"), default="primary")
    mg.add_argument("--out")
    mg.set_defaults(func=cmd_merge)

    lx = sub.add_parser("lexicon", help="lexicon utilities")
    lx_sub = lx.add_subparsers(dest="action", required=True)
    val = lx_sub.add_parser("validate", help="load a lexicon and check its invariants")
    val.add_argument("path")
    val.set_defaults(func=cmd_lexicon)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CycleError, UnknownRole, AssertionError) as exc:
        print(f"framerole: invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, ConfigError, TreeError, MismatchedSentence, NetworkError,
            CacheWriteError, UsageError, OSError, ValueError) as exc:
        print(f"framerole: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"framerole: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())
