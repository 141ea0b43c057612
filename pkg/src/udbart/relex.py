"""Pattern-based relation extraction over converted dependency graphs.

Patterns are shortest undirected paths between the two entity heads, written
as ``E1 <nsubj "founded" >dobj >compound E2``: ``<label`` climbs from a
dependent to its head, ``>label`` descends to a dependent, and a quoted word
anchors the node just reached.
"""
from __future__ import annotations

import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, NamedTuple

from .conllu import ROOT, Sentence, TokenId, parse_conllu
from .graph import DepGraph, from_sentence
from .pipeline import ConversionConfig, run_pipeline

__all__ = [
    "NO_RELATION", "RelationInstance", "PathStep", "PatternStep", "Pattern", "EvalReport",
    "AcquisitionResult", "load_dataset", "read_triggers", "graph_for", "entity_head",
    "shortest_path", "acquire_pattern", "acquire_patterns", "match", "filter_patterns",
    "filter_by_hits", "relation_f1", "greedy_economy", "predict",
    "evaluate", "economy_curve", "patterns_to_reach", "run_experiment",
    "read_patterns", "write_patterns", "format_pattern", "parse_pattern",
    "format_table", "format_report_tsv", "format_economy_tsv", "plot_economy",
]

log = logging.getLogger(__name__)

NO_RELATION = "no_relation"
SPLITS = ("train", "dev", "test")


# --- data -------------------------------------------------------------------

@dataclass
class RelationInstance:
    sentence: Sentence
    e1: tuple[int, int]
    e2: tuple[int, int]
    relation: str
    split: str
    subset: str | None = None

    def __post_init__(self):
        n = max((t.id.major for t in self.sentence.tokens), default=0)
        for name, (a, b) in (("e1", self.e1), ("e2", self.e2)):
            if not 1 <= a <= b <= n:
                raise ValueError(f"{name} span {a}:{b} outside sentence of {n} tokens")
        if not (self.e1[1] < self.e2[0] or self.e2[1] < self.e1[0]):
            raise ValueError(f"entity spans {self.e1} and {self.e2} overlap")
        if self.split not in SPLITS:
            raise ValueError(f"unknown split {self.split!r}")

    @property
    def id(self) -> str:
        return self.sentence.metadata.get("sent_id", "")


def _span(value: str) -> tuple[int, int]:
    a, _, b = value.partition(":")
    return int(a), int(b or a)


def load_dataset(source: str | Path | Iterable[str]) -> list[RelationInstance]:
    """Read instances from CoNLL-U whose comments carry ``rel``, ``e1``, ``e2``
    and ``split`` (and optionally ``subset``)."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and Path(source).exists()):
        source = Path(source).read_text(encoding="utf-8")
    out = []
    for sent in parse_conllu(source):
        meta = sent.metadata
        missing = [k for k in ("rel", "e1", "e2", "split") if k not in meta]
        if missing:
            raise ValueError(f"sentence {meta.get('sent_id', '?')}: missing {', '.join(missing)}")
        out.append(RelationInstance(sent, _span(meta["e1"]), _span(meta["e2"]), meta["rel"],
                                    meta["split"], meta.get("subset")))
    return out


def read_triggers(source: str | Path) -> dict[str, frozenset[str]]:
    """``relation<TAB>word,word`` lines; words are lowercased."""
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    out: dict[str, set[str]] = defaultdict(set)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        rel, tab, words = line.partition("\t")
        if not tab:
            raise ValueError(f"trigger line {lineno}: expected relation<TAB>words")
        out[rel.strip()].update(w.strip().lower() for w in words.split(",") if w.strip())
    return {k: frozenset(v) for k, v in out.items()}


def graph_for(sent: Sentence, representation: str) -> DepGraph:
    return run_pipeline(from_sentence(sent), ConversionConfig(mode=representation))


# --- paths ------------------------------------------------------------------

class PathStep(NamedTuple):
    direction: str  # "up": dependent -> head, "down": head -> dependent
    label: str
    node: TokenId   # node reached by this step


def entity_head(g: DepGraph, span: tuple[int, int]) -> TokenId:
    """The span token whose basic head lies outside the span (rightmost on ties)."""
    a, b = span
    inside = {TokenId(i) for i in range(a, b + 1)}
    heads = []
    for tid in sorted(inside):
        e = g.basic_head(tid)
        if e is None or e.head not in inside:
            heads.append(tid)
    if len(heads) > 1:
        g.diagnostics.append(f"span {a}:{b} has {len(heads)} external heads; using {heads[-1]}")
    return heads[-1]


def _adjacency(g: DepGraph) -> dict[TokenId, list[tuple[str, str, TokenId]]]:
    adj: dict[TokenId, list] = defaultdict(list)
    for e in g.edges():
        if e.head == ROOT:
            continue
        adj[e.head].append((e.label, "down", e.dependent))
        adj[e.dependent].append((e.label, "up", e.head))
    return adj


def shortest_path(g: DepGraph, a: TokenId, b: TokenId) -> list[PathStep] | None:
    """Shortest path between ``a`` and ``b`` ignoring edge direction.

    Among equally short paths the one with the smallest sequence of
    ``(label, direction)`` pairs wins, then the smallest node sequence.
    Returns ``None`` when the nodes are not connected.
    """
    if a == b:
        return []
    adj = _adjacency(g)
    # distance to b
    dist = {b: 0}
    frontier = [b]
    while frontier and a not in dist:
        nxt = []
        for node in frontier:
            for _, _, other in adj.get(node, ()):
                if other not in dist:
                    dist[other] = dist[node] + 1
                    nxt.append(other)
        frontier = nxt
    if a not in dist:
        return None
    # choose the smallest step key layer by layer over every tied node
    layers = [{a}]
    keys = []
    for _ in range(dist[a]):
        options = [(lab, d, other) for node in layers[-1] for lab, d, other in adj[node]
                   if dist.get(other) == dist[node] - 1]
        best = min((lab, d) for lab, d, _ in options)
        keys.append(best)
        layers.append({o for lab, d, o in options if (lab, d) == best})
    # keep nodes that can still finish, then walk forward taking the smallest id
    alive = [set() for _ in layers]
    alive[-1] = {b}
    for i in range(len(keys) - 1, -1, -1):
        lab, d = keys[i]
        alive[i] = {n for n in layers[i]
                    if any((l2, d2) == (lab, d) and o in alive[i + 1] for l2, d2, o in adj[n])}
    path, node = [], a
    for i, (lab, d) in enumerate(keys):
        node = min(o for l2, d2, o in adj[node] if (l2, d2) == (lab, d) and o in alive[i + 1])
        path.append(PathStep(d, lab, node))
    return path


# --- patterns ---------------------------------------------------------------

class PatternStep(NamedTuple):
    direction: str
    label: str
    anchor: str | None = None


@dataclass(frozen=True)
class Pattern:
    relation: str
    steps: tuple[PatternStep, ...]
    fully_lexicalized: bool = field(default=False, compare=False)
    support: int = field(default=0, compare=False)
    dev_tp: int = field(default=0, compare=False)
    dev_fp: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a pattern needs at least one step")
        if self.steps[-1].anchor is not None:
            raise ValueError("the E2 endpoint cannot carry an anchor")

    @property
    def dev_precision(self) -> float:
        n = self.dev_tp + self.dev_fp
        return self.dev_tp / n if n else 0.0

    def __str__(self) -> str:
        return format_pattern(self)


def format_pattern(p: Pattern) -> str:
    parts = ["E1"]
    for s in p.steps:
        parts.append(("<" if s.direction == "up" else ">") + s.label)
        if s.anchor is not None:
            parts.append(f'"{s.anchor}"')
    parts.append("E2")
    return " ".join(parts)


_TOKEN_RE = re.compile(r'"([^"]*)"|([<>])(\S+)|(\S+)')


def parse_pattern(text: str, relation: str = "", fully_lexicalized: bool = False) -> Pattern:
    items = _TOKEN_RE.findall(text.strip())
    if len(items) < 3 or items[0][3] != "E1" or items[-1][3] != "E2":
        raise ValueError(f"pattern must read 'E1 ... E2': {text!r}")
    steps: list[list] = []
    for anchor, arrow, label, bare in items[1:-1]:
        if arrow:
            steps.append(["up" if arrow == "<" else "down", label, None])
        elif bare or not steps or steps[-1][2] is not None:
            raise ValueError(f"unexpected token {(bare or anchor)!r} in pattern {text!r}")
        else:
            steps[-1][2] = anchor
    return Pattern(relation, tuple(PatternStep(*s) for s in steps), fully_lexicalized)


def _words(g: DepGraph, node: TokenId) -> tuple[str, str]:
    tok = g.tokens[node]
    return (tok.form or "").lower(), (tok.lemma or tok.form or "").lower()


def acquire_pattern(inst: RelationInstance, g: DepGraph,
                    triggers: dict[str, frozenset[str]]) -> Pattern | None:
    """Path pattern for one instance, lexicalized on its trigger word if the path
    has one, otherwise on every intermediate lemma."""
    a, b = entity_head(g, inst.e1), entity_head(g, inst.e2)
    path = shortest_path(g, a, b)
    if path is None:
        return None
    words = triggers.get(inst.relation, frozenset())
    inner = [s.node for s in path[:-1]]
    hits = [n for n in inner if set(_words(g, n)) & words]
    anchors: dict[TokenId, str] = {}
    if hits:
        n = min(hits)
        form, lemma = _words(g, n)
        anchors[n] = lemma if lemma in words else form
    else:
        anchors = {n: _words(g, n)[1] for n in inner}
    steps = tuple(PatternStep(s.direction, s.label, anchors.get(s.node) if i < len(path) - 1 else None)
                  for i, s in enumerate(path))
    return Pattern(inst.relation, steps, fully_lexicalized=not hits and bool(inner), support=1)


def match(pattern: Pattern, g: DepGraph, e1: tuple[int, int] | TokenId,
          e2: tuple[int, int] | TokenId) -> bool:
    """Whether some walk from the E1 head to the E2 head realizes the pattern."""
    a = e1 if isinstance(e1, TokenId) else entity_head(g, e1)
    b = e2 if isinstance(e2, TokenId) else entity_head(g, e2)
    adj = _adjacency(g)
    frontier = {a}
    last = len(pattern.steps) - 1
    for i, step in enumerate(pattern.steps):
        nxt = set()
        for node in frontier:
            for lab, d, other in adj.get(node, ()):
                if lab != step.label or d != step.direction:
                    continue
                if i < last and step.anchor is not None and step.anchor.lower() not in _words(g, other):
                    continue
                nxt.add(other)
        frontier = nxt
        if not frontier:
            return False
    return b in frontier


@dataclass
class AcquisitionResult:
    patterns: list[Pattern]
    skipped: int = 0  # training instances without a path


def acquire_patterns(train: Iterable[RelationInstance], triggers: dict[str, frozenset[str]],
                     representation: str = "bart") -> AcquisitionResult:
    """Acquire and deduplicate patterns (summing support) from training instances."""
    support: dict[Pattern, int] = defaultdict(int)
    first: dict[Pattern, Pattern] = {}
    skipped = 0
    for inst in train:
        if inst.relation == NO_RELATION:
            continue
        p = acquire_pattern(inst, graph_for(inst.sentence, representation), triggers)
        if p is None:
            skipped += 1
            continue
        support[p] += 1
        first.setdefault(p, p)
    pats = [Pattern(p.relation, p.steps, p.fully_lexicalized, support[p]) for p in first]
    pats.sort(key=lambda p: (p.relation, str(p)))
    return AcquisitionResult(pats, skipped)


# --- scoring ----------------------------------------------------------------

class _Matcher:
    """Caches converted graphs and pattern matches per instance."""

    def __init__(self, instances: list[RelationInstance], representation: str):
        self.instances = instances
        self.graphs = [graph_for(i.sentence, representation) for i in instances]
        self.heads = [(entity_head(g, i.e1), entity_head(g, i.e2))
                      for g, i in zip(self.graphs, instances)]
        self._cache: dict[Pattern, frozenset[int]] = {}

    def hits(self, p: Pattern) -> frozenset[int]:
        if p not in self._cache:
            self._cache[p] = frozenset(
                k for k, (g, (a, b)) in enumerate(zip(self.graphs, self.heads))
                if match(p, g, a, b))
        return self._cache[p]


def _f1(tp: int, fp: int, gold: int) -> float:
    denom = 2 * tp + fp + (gold - tp)
    return 2 * tp / denom if denom else 0.0


def relation_f1(rel: str, kept: Iterable[Pattern], gold: list[str],
                hits: Callable[[Pattern], frozenset[int]]) -> float:
    """Dev F1 of ``rel`` when an instance counts as predicted ``rel`` as soon as
    any kept pattern matches it."""
    covered: set[int] = set()
    for p in kept:
        covered |= hits(p)
    tp = sum(1 for k in covered if gold[k] == rel)
    return _f1(tp, len(covered) - tp, gold.count(rel))


def filter_by_hits(patterns: list[Pattern], gold: list[str],
                   hits: Callable[[Pattern], frozenset[int]]) -> list[Pattern]:
    """The filtering pass on precomputed matches (``hits(p)`` = indices into ``gold``)."""
    scored = []
    for p in patterns:
        h = hits(p)
        tp = sum(1 for k in h if gold[k] == p.relation)
        scored.append(Pattern(p.relation, p.steps, p.fully_lexicalized, p.support, tp, len(h) - tp))
    kept = []
    for rel in sorted({p.relation for p in scored}):
        group = [p for p in scored if p.relation == rel]
        current = list(group)
        for p in sorted((p for p in group if p.dev_fp > 0), key=lambda p: (p.dev_precision, str(p))):
            without = [q for q in current if q != p]
            if relation_f1(rel, without, gold, hits) >= relation_f1(rel, current, gold, hits):
                current = without
        kept.extend(current)
    return kept


def filter_patterns(patterns: list[Pattern], dev: list[RelationInstance],
                    representation: str = "bart") -> list[Pattern]:
    """Drop patterns that do not help dev F1, one relation at a time.

    Every pattern gets its dev tp/fp filled in.  Patterns with at least one
    false positive are visited from the least to the most precise; each is
    removed when the relation's dev F1 without it is at least as high.
    """
    if not dev:
        log.warning("empty dev set; patterns are not filtered")
        return list(patterns)
    m = _Matcher(dev, representation)
    return filter_by_hits(patterns, [i.relation for i in dev], m.hits)


@dataclass
class EvalReport:
    representation: str
    precision: float
    recall: float
    f1: float
    per_relation: dict[str, tuple[float, float, float]]
    n_patterns: int
    economy: list[tuple[int, float]] = field(default_factory=list)
    subset_recall: dict[str, float] = field(default_factory=dict)


def _prf(tp: int, predicted: int, gold: int) -> tuple[float, float, float]:
    p = 100.0 * tp / predicted if predicted else 0.0
    r = 100.0 * tp / gold if gold else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


def predict(patterns: list[Pattern], m: _Matcher) -> list[str]:
    """Per instance: the relation of the most dev-precise matching pattern
    (ties by relation name), or ``no_relation``."""
    best: dict[int, tuple[float, str]] = {}
    for p in patterns:
        for k in m.hits(p):
            key = (-p.dev_precision, p.relation)
            if k not in best or key < best[k]:
                best[k] = key
    return [best[k][1] if k in best else NO_RELATION for k in range(len(m.instances))]


def evaluate(patterns: list[Pattern], test: list[RelationInstance],
             representation: str = "bart", _m: _Matcher | None = None) -> EvalReport:
    """Micro precision/recall/F1 (percent) over instances whose gold or
    predicted relation is not ``no_relation``; undefined values are 0."""
    m = _m or _Matcher(test, representation)
    pred = predict(patterns, m)
    gold = [i.relation for i in test]
    rels = sorted({g for g in gold if g != NO_RELATION} | {p.relation for p in patterns})
    per = {}
    for rel in rels:
        tp = sum(1 for g, p in zip(gold, pred) if g == p == rel)
        per[rel] = _prf(tp, pred.count(rel), gold.count(rel))
    tp = sum(1 for g, p in zip(gold, pred) if g == p != NO_RELATION)
    n_pred = sum(1 for p in pred if p != NO_RELATION)
    n_gold = sum(1 for g in gold if g != NO_RELATION)
    subsets = defaultdict(lambda: [0, 0])
    for inst, p in zip(test, pred):
        if inst.subset and inst.relation != NO_RELATION:
            subsets[inst.subset][1] += 1
            subsets[inst.subset][0] += p == inst.relation
    return EvalReport(representation, *_prf(tp, n_pred, n_gold), per, len(patterns),
                      subset_recall={k: 100.0 * a / b for k, (a, b) in sorted(subsets.items())})


def greedy_economy(patterns: list[Pattern], cover: dict[Pattern, frozenset[int]],
                   n_gold: int) -> list[tuple[int, float]]:
    """Greedy set cover: recall (percent of ``n_gold``) after each added pattern."""
    left = list(patterns)
    got: set[int] = set()
    series = []
    while left:
        best = min(left, key=lambda p: (-len(cover[p] - got), -p.dev_precision, str(p), p.relation))
        left.remove(best)
        got |= cover[best]
        series.append((len(series) + 1, 100.0 * len(got) / n_gold if n_gold else 0.0))
    return series


def economy_curve(patterns: list[Pattern], test: list[RelationInstance],
                  representation: str = "bart", _m: _Matcher | None = None) -> list[tuple[int, float]]:
    """Recall after k patterns, adding at each step the pattern that recovers the
    most not-yet-recalled gold instances (ties: higher dev precision, then text).

    A gold instance counts as recalled once a chosen pattern of its own
    relation matches it.
    """
    m = _m or _Matcher(test, representation)
    n_gold = sum(1 for i in test if i.relation != NO_RELATION)
    cover = {p: frozenset(k for k in m.hits(p) if test[k].relation == p.relation) for p in patterns}
    return greedy_economy(patterns, cover, n_gold)


def patterns_to_reach(series: list[tuple[int, float]], recall: float, eps: float = 1e-9) -> int | None:
    for k, r in series:
        if r + eps >= recall:
            return k
    return None


def run_experiment(instances: list[RelationInstance], triggers: dict[str, frozenset[str]],
                   representation: str = "bart") -> tuple[list[Pattern], EvalReport]:
    """Acquire on train, filter on dev, score and build the economy curve on test."""
    by_split = {s: [i for i in instances if i.split == s] for s in SPLITS}
    for s in ("train", "test"):
        if not by_split[s]:
            raise ValueError(f"dataset has no {s} split")
    acquired = acquire_patterns(by_split["train"], triggers, representation)
    kept = filter_patterns(acquired.patterns, by_split["dev"], representation)
    m = _Matcher(by_split["test"], representation)
    report = evaluate(kept, by_split["test"], representation, m)
    report.economy = economy_curve(kept, by_split["test"], representation, m)
    return kept, report


# --- files ------------------------------------------------------------------

PATTERN_HEADER = "# relation\tpattern\tlexicalization\tsupport\tdev_tp\tdev_fp"


def write_patterns(patterns: Iterable[Pattern]) -> str:
    lines = [PATTERN_HEADER]
    for p in patterns:
        lines.append("\t".join([p.relation, str(p), "full" if p.fully_lexicalized else "trigger",
                                str(p.support), str(p.dev_tp), str(p.dev_fp)]))
    return "\n".join(lines) + "\n"


def read_patterns(text: str) -> list[Pattern]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise ValueError(f"pattern line {lineno}: expected 6 columns, found {len(cols)}")
        rel, text_, lex, support, tp, fp = cols
        p = parse_pattern(text_, rel, lex == "full")
        out.append(Pattern(rel, p.steps, lex == "full", int(support), int(tp), int(fp)))
    return out


def format_report_tsv(reports: list[EvalReport]) -> str:
    lines = ["representation\tprecision\trecall\tf1\tpatterns"]
    for r in reports:
        lines.append(f"{r.representation}\t{r.precision:.2f}\t{r.recall:.2f}\t{r.f1:.2f}\t{r.n_patterns}")
    return "\n".join(lines) + "\n"


def format_table(reports: list[EvalReport]) -> str:
    head = f"{'Representation':<16}{'Precision':>10}{'Recall':>10}{'F1':>10}"
    rows = [head, "-" * len(head)]
    for r in reports:
        rows.append(f"{r.representation.upper():<16}{r.precision:>10.2f}{r.recall:>10.2f}{r.f1:>10.2f}")
    return "\n".join(rows) + "\n"


def format_economy_tsv(series: list[tuple[int, float]]) -> str:
    return "pattern_count\trecall\n" + "".join(f"{k}\t{r:.4f}\n" for k, r in series)


def plot_economy(curves: dict[str, list[tuple[int, float]]], path: str | Path) -> None:
    """Render recall against pattern count; needs matplotlib."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, series in curves.items():
        ax.step([0] + [k for k, _ in series], [0.0] + [r for _, r in series], where="post",
                label=name.upper())
    ax.set_xlabel("number of patterns")
    ax.set_ylabel("recall (%)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
