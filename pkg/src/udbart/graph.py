"""Per-sentence dependency multigraph with provenance-carrying edges."""
from __future__ import annotations

import copy
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .conllu import ROOT, EdgeInfo, Sentence, Token, TokenId, UD, decode_extra, encode_extra

__all__ = ["DepGraph", "Edge", "GraphError", "NodeRef", "from_sentence", "label_matches"]

NODE_KINDS = ("word", "state", "copy")


class GraphError(ValueError):
    pass


class NodeRef(NamedTuple):
    index: TokenId
    kind: str


@dataclass(frozen=True, order=True)
class Edge:
    head: TokenId
    dependent: TokenId
    label: str
    info: EdgeInfo = UD

    @property
    def base(self) -> str:
        return self.label.split(":", 1)[0]

    def __str__(self) -> str:
        return f"{encode_extra(self.label, self.info)}({self.head}, {self.dependent})"


def label_matches(label: str, wanted: str) -> bool:
    """``nmod`` matches ``nmod:by``; ``nmod:by`` only matches itself."""
    if ":" in wanted:
        return label == wanted
    return label == wanted or label.startswith(wanted + ":")


def _primary_key(item: tuple[int, EdgeInfo]):
    order, info = item
    return (not info.is_ud, info.unc, order)


class DepGraph:
    """Basic tree (frozen) plus a mutable enhanced edge multigraph.

    Enhanced edges are keyed by ``(head, dependent, label)``; each key holds
    one or more ``EdgeInfo`` records with distinct ``src``.  The primary record
    (UD first, then certain over uncertain, then earliest) is what gets
    serialized.
    """

    def __init__(self, tokens: dict[TokenId, Token], basic: tuple[Edge, ...]):
        self.tokens = tokens
        self.basic = basic
        self._records: dict[tuple[TokenId, TokenId, str], list[tuple[int, EdgeInfo]]] = {}
        self._out: dict[TokenId, set] = defaultdict(set)
        self._in: dict[TokenId, set] = defaultdict(set)
        self._clock = 0
        self._basic_head = {e.dependent: e for e in basic}
        self._basic_children: dict[TokenId, list[Edge]] = defaultdict(list)
        for e in basic:
            self._basic_children[e.head].append(e)
        self.diagnostics: list[str] = []
        self.removal_log: list[Edge] = []
        self.comments: list[str] = []
        self.multiwords: list = []
        self._next_alt = 0

    # -- nodes -------------------------------------------------------------

    def __contains__(self, node: TokenId) -> bool:
        return node in self.tokens

    def nodes(self) -> list[TokenId]:
        return sorted(self.tokens)

    def kind(self, node: TokenId) -> str:
        tok = self.tokens[node]
        if not node.is_null:
            return "word"
        if "CopyOf" in tok.misc:
            return "copy"
        return "state" if tok.form == "STATE" else "copy"

    def node(self, node: TokenId) -> NodeRef:
        return NodeRef(node, self.kind(node))

    def add_node(self, after: TokenId | int, kind: str, form: str | None = None,
                 copy_of: TokenId | None = None) -> NodeRef:
        """Insert a null node ``after.j`` with the smallest unused ``j``."""
        after = TokenId(after) if isinstance(after, int) else after
        if after.is_null or after not in self.tokens:
            raise GraphError(f"cannot add a node after {after}: no such surface token")
        if kind not in ("state", "copy"):
            raise GraphError(f"added nodes are state or copy nodes, not {kind!r}")
        minor = 1
        while TokenId(after.major, minor) in self.tokens:
            minor += 1
        tid = TokenId(after.major, minor)
        if kind == "state":
            tok = Token(tid, form="STATE", lemma="STATE")
        else:
            if copy_of is None:
                raise GraphError("copy nodes need the id of the copied node")
            src = self.tokens[copy_of]
            tok = Token(tid, form=form or src.form, lemma=src.lemma, upos=src.upos,
                        xpos=src.xpos, feats=dict(src.feats), misc={"CopyOf": str(copy_of)})
        self.tokens[tid] = tok
        return NodeRef(tid, kind)

    def token(self, node: TokenId) -> Token:
        return self.tokens[node]

    def lemma(self, node: TokenId) -> str:
        tok = self.tokens.get(node)
        if tok is None:
            return ""
        return (tok.lemma or tok.form or "").lower()

    # -- enhanced edges ----------------------------------------------------

    def _check_endpoint(self, node: TokenId, role: str):
        if node != ROOT and node not in self.tokens:
            raise GraphError(f"unknown {role} node {node}")

    def add_edge(self, head: TokenId, dep: TokenId, label: str, info: EdgeInfo = UD) -> bool:
        """Add an enhanced edge; returns False when nothing changed."""
        self._check_endpoint(head, "head")
        self._check_endpoint(dep, "dependent")
        if dep == ROOT:
            raise GraphError("the root cannot be a dependent")
        if head == dep:
            raise GraphError(f"self-loop on {head}")
        key = (head, dep, label)
        recs = self._records.get(key)
        if recs is None:
            self._records[key] = [(self._clock, info)]
            self._out[head].add(key)
            self._in[dep].add(key)
        elif any(r.src == info.src for _, r in recs):
            return False
        else:
            recs.append((self._clock, info))
        self._clock += 1
        if info.alt is not None:
            self._next_alt = max(self._next_alt, info.alt + 1)
        return True

    def remove_edge(self, head: TokenId, dep: TokenId, label: str) -> bool:
        key = (head, dep, label)
        recs = self._records.pop(key, None)
        if recs is None:
            self.diagnostics.append(f"remove of absent edge {label}({head}, {dep}) ignored")
            return False
        self._out[head].discard(key)
        self._in[dep].discard(key)
        self.removal_log.append(Edge(head, dep, label, self._primary(recs)))
        return True

    def relabel(self, head: TokenId, dep: TokenId, old: str, new: str) -> bool:
        """Rename an edge label in place, keeping every provenance record."""
        recs = self._records.pop((head, dep, old), None)
        if recs is None:
            return False
        self._out[head].discard((head, dep, old))
        self._in[dep].discard((head, dep, old))
        key = (head, dep, new)
        if key in self._records:
            have = {info.src for _, info in self._records[key]}
            self._records[key].extend(r for r in recs if r[1].src not in have)
        else:
            self._records[key] = recs
            self._out[head].add(key)
            self._in[dep].add(key)
        return True

    @staticmethod
    def _primary(recs) -> EdgeInfo:
        return min(recs, key=_primary_key)[1]

    def has_edge(self, head: TokenId, dep: TokenId, label: str | None = None) -> bool:
        if label is not None and ":" in label:
            return (head, dep, label) in self._records
        return any(k[1] == dep and (label is None or label_matches(k[2], label))
                   for k in self._out.get(head, ()))

    def info(self, head: TokenId, dep: TokenId, label: str) -> EdgeInfo:
        return self._primary(self._records[(head, dep, label)])

    def records(self, head: TokenId, dep: TokenId, label: str) -> list[EdgeInfo]:
        return [info for _, info in sorted(self._records.get((head, dep, label), ()),
                                           key=lambda r: r[0])]

    def edges(self) -> list[Edge]:
        return sorted(Edge(h, d, l, self._primary(r)) for (h, d, l), r in self._records.items())

    def all_records(self) -> Iterator[Edge]:
        for (h, d, l), recs in sorted(self._records.items()):
            for _, info in sorted(recs, key=lambda r: r[0]):
                yield Edge(h, d, l, info)

    def children(self, node: TokenId, label: str | None = None) -> list[Edge]:
        keys = sorted(k for k in self._out.get(node, ())
                      if label is None or label_matches(k[2], label))
        return [Edge(h, d, l, self._primary(self._records[(h, d, l)])) for h, d, l in keys]

    def parents(self, node: TokenId, label: str | None = None) -> list[Edge]:
        keys = sorted(k for k in self._in.get(node, ())
                      if label is None or label_matches(k[2], label))
        return [Edge(h, d, l, self._primary(self._records[(h, d, l)])) for h, d, l in keys]

    def edges_labeled(self, label: str) -> list[Edge]:
        return [e for e in self.edges() if label_matches(e.label, label)]

    def snapshot(self) -> tuple:
        return (len(self.tokens), frozenset(
            (k, tuple(info for _, info in v)) for k, v in self._records.items()))

    def new_alt(self) -> int:
        alt = self._next_alt
        self._next_alt += 1
        return alt

    # -- basic tree --------------------------------------------------------

    def basic_head(self, node: TokenId) -> Edge | None:
        return self._basic_head.get(node)

    def basic_children(self, node: TokenId, label: str | None = None) -> list[Edge]:
        return [e for e in self._basic_children.get(node, ())
                if label is None or label_matches(e.label, label)]

    def subtree_tokens(self, node: TokenId) -> set[TokenId]:
        seen = {node}
        stack = [node]
        while stack:
            for e in self._basic_children.get(stack.pop(), ()):
                if e.dependent not in seen:
                    seen.add(e.dependent)
                    stack.append(e.dependent)
        return seen

    def basic_ancestors(self, node: TokenId) -> list[TokenId]:
        out = []
        e = self._basic_head.get(node)
        while e is not None and e.head != ROOT:
            out.append(e.head)
            e = self._basic_head.get(e.head)
        return out

    # -- output ------------------------------------------------------------

    def to_sentence(self) -> Sentence:
        """Sentence with DEPS rebuilt from the enhanced layer; basic columns untouched."""
        toks = {tid: copy.copy(tok) for tid, tok in self.tokens.items()}
        for tok in toks.values():
            tok.deps = []
        for e in self.edges():
            toks[e.dependent].deps.append((e.head, encode_extra(e.label, e.info)))
        return Sentence([toks[t] for t in sorted(toks)], list(self.comments),
                        list(self.multiwords))

    def copy(self) -> "DepGraph":
        return copy.deepcopy(self)


def _check_tree(tokens: dict[TokenId, Token], basic: list[Edge]) -> None:
    surface = [t for t in tokens if not t.is_null]
    roots = [e for e in basic if e.head == ROOT]
    if surface and len(roots) != 1:
        raise GraphError(f"basic tree must have exactly one root, found {len(roots)}")
    if len(basic) != len(surface):
        raise GraphError("every surface token needs exactly one basic head")
    head_of = {e.dependent: e.head for e in basic}
    for start in surface:
        seen = set()
        node = start
        while node != ROOT:
            if node in seen:
                raise GraphError(f"cycle in basic tree through token {start}")
            seen.add(node)
            node = head_of[node]


def from_sentence(sent: Sentence, seed_from_deps: bool = False) -> DepGraph:
    """Build a graph whose enhanced layer starts as a copy of the basic tree.

    With ``seed_from_deps`` the enhanced layer is read from the DEPS column
    instead (edge metadata decoded), when any token has DEPS.
    """
    tokens = {t.id: copy.copy(t) for t in sent.tokens}
    basic = [Edge(t.head, t.id, t.deprel or "dep") for t in sent.tokens
             if not t.is_null and t.head is not None]
    _check_tree(tokens, basic)
    g = DepGraph(tokens, tuple(sorted(basic)))
    g.comments = list(sent.comments)
    g.multiwords = list(sent.multiwords)
    if seed_from_deps and any(t.deps for t in sent.tokens):
        for t in sent.tokens:
            for head, raw in t.deps:
                label, info = decode_extra(raw)
                g.add_edge(head, t.id, label, info)
    else:
        for e in basic:
            g.add_edge(e.head, e.dependent, e.label)
    return g
