"""Enhanced-UD passes: case-subtyped labels, conjunct propagation,
relative-clause linking, ``to``-infinitive control and conjoined prepositions.

Each pass rewrites the enhanced layer of a :class:`DepGraph` in place and
returns it.  A sentence the pass does not apply to is left unchanged.
"""
from __future__ import annotations

from ._ud import (
    Context, NOMINAL_SUBJECTS, RELATIVIZERS, SUBJECTS, add, base, cc_word,
    has_subject, inherit, marker, src,
)
from .graph import DepGraph

__all__ = [
    "augment_case_labels",
    "expand_conjoined_prepositions",
    "propagate_conjuncts",
    "link_relative_clauses",
    "control_xcomp_to",
]


def augment_case_labels(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """nmod -> nmod:<case lemma>, advcl -> advcl:<mark lemma>."""
    for e in g.edges():
        if e.label == "nmod":
            m = marker(g, e.dependent, ("case",))
        elif e.label == "advcl":
            m = marker(g, e.dependent, ("mark",)) or marker(g, e.dependent, ("case",))
        else:
            continue
        if m:
            g.relabel(e.head, e.dependent, e.label, f"{e.label}:{m}")
    return g


def expand_conjoined_prepositions(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """"to and from work": copy ``work`` so each preposition gets its own nmod."""
    for e in g.edges():
        if base(e.label) != "nmod" or e.label == "nmod:poss" or e.dependent.is_null:
            continue
        noun = e.dependent
        cases = sorted(c.dependent for c in g.basic_children(noun, "case"))
        if not cases:
            continue
        first = cases[0]
        for conj in g.basic_children(first, "conj"):
            prep = conj.dependent
            done = any(t.misc.get("CopyOf") == str(noun) and g.has_edge(tid, prep, "case")
                       for tid, t in g.tokens.items())
            if done:
                continue
            info = src("conj", cc_word(g, first, prep))
            copy = g.add_node(noun, "copy", copy_of=noun).index
            add(g, e.head, copy, f"nmod:{g.lemma(prep)}", info)
            add(g, copy, prep, "case", info)
            add(g, noun, copy, "conj", info)
    return g


def propagate_conjuncts(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Share core arguments between conjuncts.

    A conjunct without a subject (object) receives the first conjunct's
    subjects (objects); a conjunct of a core dependent becomes a dependent of
    the same kind.
    """
    for e in g.edges_labeled("conj"):
        h, c = e.head, e.dependent
        if c.is_null or h.is_null:
            continue
        word = cc_word(g, h, c)
        kids = [k for k in g.children(h) if k.dependent != c and not k.info.unc]
        subjects = [k for k in kids if base(k.label) in SUBJECTS]
        if subjects and not has_subject(g, c):
            for k in subjects:
                add(g, c, k.dependent, k.label, inherit("conj", word, k))
        objects = [k for k in kids if k.label == "dobj"]
        if objects and not g.children(c, "dobj") and not g.basic_children(c, "dobj"):
            for k in objects:
                add(g, c, k.dependent, k.label, inherit("conj", word, k))
        for p in g.parents(h):
            if base(p.label) in ("nsubj", "nsubjpass", "dobj", "iobj") and p.head != c:
                add(g, p.head, c, p.label, inherit("conj", word, p))
    return g


def _is_relativizer(g: DepGraph, node) -> bool:
    tok = g.tokens[node]
    if g.lemma(node) not in RELATIVIZERS:
        return False
    return (tok.xpos or "").startswith("W") or tok.feats.get("PronType") == "Rel"


def link_relative_clauses(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """The antecedent takes over the relative pronoun's role inside the clause;
    the pronoun is attached to the antecedent as ``ref``."""
    for e in g.edges_labeled("acl"):
        noun, clause = e.head, e.dependent
        for k in g.children(clause):
            if k.dependent == noun or not _is_relativizer(g, k.dependent):
                continue
            if base(k.label) in ("mark", "ref"):
                continue
            info = src("relcl")
            g.remove_edge(clause, k.dependent, k.label)
            add(g, clause, noun, k.label, info)
            add(g, noun, k.dependent, "ref", info)
    return g


def control_xcomp_to(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Subject of a ``to``-infinitive xcomp: the matrix object if any, else its subject."""
    for e in g.edges_labeled("xcomp"):
        if not e.info.is_ud:
            continue
        h, c = e.head, e.dependent
        if marker(g, c, ("mark",)) != "to" or has_subject(g, c):
            continue
        kids = [k for k in g.children(h) if k.dependent != c and not k.info.unc]
        controllers = [k for k in kids if k.label == "dobj"] or \
                      [k for k in kids if base(k.label) in NOMINAL_SUBJECTS]
        for k in controllers:
            add(g, c, k.dependent, "nsubj", inherit("xcomp", "to", k))
    return g
