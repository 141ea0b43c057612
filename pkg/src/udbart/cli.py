"""Command-line front end: ``udbart convert | diff | relex ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import relex
from .conllu import ConlluError, encode_extra, normalize_v2_labels, parse_conllu, serialize_conllu
from .graph import GraphError, from_sentence
from .lexicons import Lexicons
from .pipeline import MODES, REGISTRY, ConversionConfig, run_pipeline

log = logging.getLogger("udbart")

# convert flags that a JSON config file may set
CONFIG_KEYS = {"mode", "enable", "disable", "no_state_node", "iterations", "lexicon_dir",
               "v2_labels", "strict", "jobs"}
DEFAULTS = {"mode": "bart", "enable": [], "disable": [], "no_state_node": False, "iterations": 3,
            "lexicon_dir": None, "v2_labels": False, "strict": True, "jobs": 1}


class UsageError(Exception):
    pass


def _data(name: str) -> str:
    return (resources.files("udbart") / "data" / name).read_text("utf-8")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _warn(msg: str) -> None:
    print(msg, file=sys.stderr)


# --- convert ------------------------------------------------------------------

def _settings(args) -> dict:
    """Defaults, then the config file, then flags given on the command line."""
    out = dict(DEFAULTS)
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        out.update(data)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None and value != []:
            out[key] = value
    return out


def _config(s: dict) -> ConversionConfig:
    lex = Lexicons.from_dir(s["lexicon_dir"]) if s["lexicon_dir"] else Lexicons.default()
    try:
        return ConversionConfig(mode=s["mode"], disabled=frozenset(s["disable"]),
                                enabled=frozenset(s["enable"]), state_node=not s["no_state_node"],
                                max_iterations=int(s["iterations"]), lexicons=lex)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _convert_text(text: str, name: str, settings: dict) -> tuple[str, list[str], int]:
    """Convert one file's text; returns output, diagnostics and the error count."""
    config = _config(settings)
    errors: list[ConlluError] = []
    diags: list[str] = []
    try:
        sents = parse_conllu(text, strict=settings["strict"], errors=errors)
    except ConlluError as exc:
        return "", [f"{name}: {exc}"], 1
    diags.extend(f"{name}: skipped sentence: {e}" for e in errors)
    if settings["v2_labels"]:
        normalize_v2_labels(sents)
    out = []
    n_err = 0
    for i, sent in enumerate(sents, 1):
        sid = sent.metadata.get("sent_id", f"#{i}")
        try:
            g = run_pipeline(from_sentence(sent), config)
        except GraphError as exc:
            diags.append(f"{name}: sentence {sid}: {exc}")
            if settings["strict"]:
                n_err += 1
            continue
        diags.extend(f"{name}: sentence {sid}: {d}" for d in g.diagnostics)
        out.append(g.to_sentence())
    return serialize_conllu(out), diags, n_err


def _convert_job(job):
    path, settings = job
    return _convert_text(_read(path), path, settings)


def cmd_convert(args) -> int:
    if args.list_rules:
        for r in REGISTRY:
            print(f"{r.id}\t{r.family}\t{r.description}")
        return 0
    settings = _settings(args)
    inputs = args.inputs or ["-"]
    jobs = [(p, settings) for p in inputs]
    if settings["jobs"] > 1 and "-" not in inputs and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=settings["jobs"]) as pool:
            results = list(pool.map(_convert_job, jobs))  # map keeps input order
    else:
        results = [_convert_job(j) for j in jobs]
    n_err = 0
    text = []
    for out, diags, errs in results:
        for d in diags:
            _warn(d)
        n_err += errs
        text.append(out)
    _write("".join(text), args.output)
    if n_err:
        _warn(f"{n_err} error(s)")
        return 1
    return 0


# --- diff ---------------------------------------------------------------------

def _edge_sets(sent, mode: str) -> tuple[dict, dict]:
    g = run_pipeline(from_sentence(sent), ConversionConfig(mode=mode))
    words = {tid: tok.form for tid, tok in g.tokens.items()}
    return {(e.head, e.dependent, e.label): e for e in g.edges()}, words


def cmd_diff(args) -> int:
    sents = parse_conllu(_read(args.input))
    lines = []
    for i, sent in enumerate(sents, 1):
        left, _ = _edge_sets(sent, args.left)
        right, words = _edge_sets(sent, args.right)

        def show(sign, e):
            h = "ROOT" if e.head.major == 0 else f"{words[e.head]}/{e.head}"
            return f"{sign} {encode_extra(e.label, e.info)}({h}, {words[e.dependent]}/{e.dependent})"

        changes = [show("-", left[k]) for k in sorted(set(left) - set(right))]
        changes += [show("+", right[k]) for k in sorted(set(right) - set(left))]
        if changes:
            lines.append(f"# sent_id = {sent.metadata.get('sent_id', i)}")
            lines.extend(changes)
    _write("".join(l + "\n" for l in lines), args.output)
    return 0


# --- relex --------------------------------------------------------------------

def _dataset(args) -> list[relex.RelationInstance]:
    return relex.load_dataset(_read(args.data) if args.data else _data("synthetic_re.conllu"))


def _split(instances, name: str):
    chosen = [i for i in instances if i.split == name]
    if not chosen:
        raise UsageError(f"dataset has no {name} split")
    return chosen


def _representations(args) -> list[str]:
    return list(MODES) if args.representation == "all" else [args.representation]


def cmd_relex(args) -> int:
    data = _dataset(args)
    if args.action == "acquire":
        triggers = relex.read_triggers(_read(args.triggers) if args.triggers else _data("triggers.tsv"))
        res = relex.acquire_patterns(_split(data, "train"), triggers, args.representation)
        if res.skipped:
            _warn(f"{res.skipped} training instance(s) without a path were skipped")
        _write(relex.write_patterns(res.patterns), args.output)
        return 0
    if args.action == "run":
        triggers = relex.read_triggers(_read(args.triggers) if args.triggers else _data("triggers.tsv"))
        reports = []
        for rep in _representations(args):
            _, report = relex.run_experiment(data, triggers, rep)
            reports.append(report)
        _emit_reports(reports, args)
        if args.economy:
            Path(args.economy).mkdir(parents=True, exist_ok=True)
            for r in reports:
                (Path(args.economy) / f"economy_{r.representation}.tsv").write_text(
                    relex.format_economy_tsv(r.economy), encoding="utf-8")
        if args.plot:
            relex.plot_economy({r.representation: r.economy for r in reports}, args.plot)
        return 0
    patterns = relex.read_patterns(_read(args.patterns))
    if args.action == "filter":
        kept = relex.filter_patterns(patterns, _split(data, "dev"), args.representation)
        _warn(f"kept {len(kept)} of {len(patterns)} patterns")
        _write(relex.write_patterns(kept), args.output)
        return 0
    test = _split(data, "test")
    if args.action == "eval":
        _emit_reports([relex.evaluate(patterns, test, args.representation)], args)
        return 0
    series = relex.economy_curve(patterns, test, args.representation)
    _write(relex.format_economy_tsv(series), args.output)
    if args.plot:
        relex.plot_economy({args.representation: series}, args.plot)
    return 0


def _emit_reports(reports, args) -> None:
    text = relex.format_report_tsv(reports) if args.tsv else relex.format_table(reports)
    _write(text, args.output)


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udbart", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert CoNLL-U trees to enhanced graphs")
    c.add_argument("inputs", nargs="*", help="input files (default: standard input)")
    c.add_argument("-o", "--output", help="output file (default: standard output)")
    c.add_argument("--mode", choices=MODES, default=None)
    c.add_argument("--enable", action="append", default=[], metavar="RULE")
    c.add_argument("--disable", action="append", default=[], metavar="RULE")
    c.add_argument("--no-state-node", dest="no_state_node", action="store_const", const=True,
                   default=None, help="let the copula head copular clauses instead of a STATE node")
    c.add_argument("--iterations", type=int, default=None, help="fixpoint iteration cap (default 3)")
    c.add_argument("--lexicon-dir", dest="lexicon_dir", default=None)
    c.add_argument("--v2-labels", dest="v2_labels", action="store_const", const=True, default=None,
                   help="map UD v2 relation names to the v1 names first")
    strict = c.add_mutually_exclusive_group()
    strict.add_argument("--strict", dest="strict", action="store_const", const=True, default=None)
    strict.add_argument("--lenient", dest="strict", action="store_const", const=False)
    c.add_argument("--jobs", type=int, default=None, help="convert input files in parallel")
    c.add_argument("--config", help="JSON file with any of the flags above")
    c.add_argument("--list-rules", action="store_true", help="list rule ids and exit")
    c.set_defaults(func=cmd_convert)

    d = sub.add_parser("diff", help="edge-level diff between two representations")
    d.add_argument("input")
    d.add_argument("--left", choices=MODES, default="ud")
    d.add_argument("--right", choices=MODES, default="bart")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_diff)

    r = sub.add_parser("relex", help="pattern-based relation extraction experiment")
    r.add_argument("action", choices=("acquire", "filter", "eval", "economy", "run"))
    r.add_argument("--data", help="dataset CoNLL-U (default: the shipped synthetic corpus)")
    r.add_argument("--triggers", help="trigger lexicon (default: the shipped one)")
    r.add_argument("--patterns", help="pattern file (filter, eval, economy)")
    r.add_argument("--representation", choices=MODES + ("all",), default="bart")
    r.add_argument("--tsv", action="store_true", help="report as TSV instead of a table")
    r.add_argument("--plot", help="write an economy plot (needs matplotlib)")
    r.add_argument("--economy", metavar="DIR", help="run: write economy TSVs into DIR")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_relex)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "relex" and args.action in ("filter", "eval", "economy") and not args.patterns:
        parser.error(f"relex {args.action} needs --patterns")
    if args.command == "relex" and args.representation == "all" and args.action != "run":
        parser.error("--representation all is only valid with relex run")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        _warn(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
