"""Small helpers shared by the EUD and BART rule sets."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .conllu import EdgeInfo, TokenId
from .graph import DepGraph, Edge
from .lexicons import Lexicons

SUBJECTS = ("nsubj", "nsubjpass", "csubj", "csubjpass")
NOMINAL_SUBJECTS = ("nsubj", "nsubjpass")
CORE = ("nsubj", "nsubjpass", "dobj", "iobj")
# children that belong to the clause rather than to the predicate word
CLAUSE_LEVEL = ("mark", "advcl", "aux", "auxpass", "punct", "neg", "parataxis", "discourse", "expl")
RELATIVIZERS = frozenset({"who", "whom", "which", "that"})


@dataclass
class Context:
    lexicons: Lexicons = field(default_factory=Lexicons.default)
    state_node: bool = True


def base(label: str) -> str:
    return label.split(":", 1)[0]


def is_verbal(g: DepGraph, node: TokenId) -> bool:
    tok = g.tokens.get(node)
    if tok is None:
        return False
    return tok.upos in ("VERB", "AUX") or (tok.xpos or "").startswith(("VB", "MD"))


def is_adjectival(g: DepGraph, node: TokenId) -> bool:
    tok = g.tokens.get(node)
    return tok is not None and (tok.upos == "ADJ" or (tok.xpos or "").startswith("JJ"))


def is_nominal(g: DepGraph, node: TokenId) -> bool:
    tok = g.tokens.get(node)
    if tok is None:
        return False
    return tok.upos in ("NOUN", "PROPN", "PRON", "NUM") or (tok.xpos or "").startswith(("NN", "PRP", "CD"))


def clean(word: str) -> str:
    return re.sub(r"[^\w']+", "_", word.lower()).strip("_") or "_"


def marker(g: DepGraph, node: TokenId, labels=("case",)) -> str | None:
    """Lemma of the leftmost basic ``case``/``mark`` child, multi-word parts joined with ``_``."""
    kids = sorted((e for e in g.basic_children(node) if base(e.label) in labels),
                  key=lambda e: e.dependent)
    if not kids:
        return None
    if len(kids) > 1:
        g.diagnostics.append(f"token {node} has {len(kids)} {'/'.join(labels)} markers; using the leftmost")
    first = kids[0].dependent
    parts = [first] + sorted(e.dependent for e in g.basic_children(first)
                             if e.label in ("mwe", "fixed"))
    return clean("_".join(g.lemma(p) for p in parts))


def cc_word(g: DepGraph, head: TokenId, conjunct: TokenId) -> str | None:
    """Coordinating word for the conjunct: its own cc, else the cc of the first
    conjunct, else the cc of a later sibling conjunct ("Tom, Ann and Bob")."""
    own = [e.dependent for e in g.basic_children(conjunct, "cc")]
    if own:
        return clean(g.lemma(min(own)))
    shared = sorted(e.dependent for e in g.basic_children(head, "cc"))
    if not shared:
        later = sorted(e.dependent for e in g.basic_children(head, "conj") if e.dependent > conjunct)
        for sib in later:
            ccs = sorted(e.dependent for e in g.basic_children(sib, "cc"))
            if ccs:
                return clean(g.lemma(ccs[0]))
    if not shared:
        return None
    before = [c for c in shared if c < conjunct]
    return clean(g.lemma(before[-1] if before else shared[0]))


def has_subject(g: DepGraph, node: TokenId) -> bool:
    return (any(base(e.label) in SUBJECTS for e in g.basic_children(node))
            or any(base(e.label) in SUBJECTS for e in g.children(node)))


def src(kind: str, sub: str | None = None, unc: bool = False, alt: int | None = None) -> EdgeInfo:
    return EdgeInfo((kind, sub), unc, alt)


def inherit(kind: str, sub: str | None, edge: Edge, unc: bool = False) -> EdgeInfo:
    """Provenance for an edge copied from ``edge``: uncertainty and alternation carry over."""
    return EdgeInfo((kind, sub), unc or edge.info.unc, edge.info.alt)


def add(g: DepGraph, head: TokenId, dep: TokenId, label: str, info: EdgeInfo) -> bool:
    if head == dep or dep not in g.tokens:
        return False
    return g.add_edge(head, dep, label, info)


def move(g: DepGraph, edge: Edge, head: TokenId | None = None, dep: TokenId | None = None,
         info: EdgeInfo | None = None) -> None:
    """Replace ``edge`` by the same label between new endpoints."""
    new_head = edge.head if head is None else head
    new_dep = edge.dependent if dep is None else dep
    g.remove_edge(edge.head, edge.dependent, edge.label)
    add(g, new_head, new_dep, edge.label, info or edge.info)
