"""BART conversions on top of (optionally) enhanced UD.

Four families, applied in this order by the pipeline:

* nested structures: external subjects of controlled, adverbial and
  noun-modifying clauses;
* parallel structures: sharing across appositions, coordinations,
  elaborations, indexical adverbs and compounds;
* alternations: passive, hyphenated, adjectival and genitive constructions
  are given the edges of their canonical counterparts;
* event structure: copular clauses get a STATE node, and evidential,
  reported-speech and aspectual verbs become ``ev`` modifiers of the event
  they introduce.

Passes mutate the graph's enhanced layer and return the graph.
"""
from __future__ import annotations

from ._ud import (
    CLAUSE_LEVEL, CORE, Context, NOMINAL_SUBJECTS, SUBJECTS, add, base, cc_word,
    has_subject, inherit, is_adjectival, is_nominal, is_verbal, marker, move, src,
)
from .conllu import ROOT, EdgeInfo, TokenId
from .graph import DepGraph, Edge

__all__ = [
    "extended_control", "noun_modifying_clauses", "advcl_subjects", "dep_as_advcl",
    "apposition_sharing", "conj_modifier_sharing", "elaboration_specification",
    "indexicals", "compound_sharing", "passivization", "hyphen_reconstruction",
    "adjectival_subjects", "genitive_compound", "copula_state",
    "evidential_rewiring", "aspectual_rewiring",
]

_ctx_default = None


def _ctx(ctx: Context | None) -> Context:
    global _ctx_default
    if ctx is not None:
        return ctx
    if _ctx_default is None:
        _ctx_default = Context()
    return _ctx_default


def _core_kids(g: DepGraph, node: TokenId, exclude: TokenId, labels) -> list[Edge]:
    return [k for k in g.children(node)
            if k.dependent != exclude and not k.info.unc and base(k.label) in labels]


# --- nested structures -----------------------------------------------------

def extended_control(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Subjects of verbal xcomp/ccomp clauses with neither a subject nor ``to``."""
    for e in g.edges():
        if base(e.label) not in ("xcomp", "ccomp") or not e.info.is_ud:
            continue
        h, c = e.head, e.dependent
        if not is_verbal(g, c) or has_subject(g, c) or marker(g, c, ("mark",)) == "to":
            continue
        controllers = (_core_kids(g, h, c, ("dobj",))
                       or _core_kids(g, h, c, NOMINAL_SUBJECTS))
        for k in controllers:
            add(g, c, k.dependent, "nsubj", inherit(base(e.label), None, k))
    return g


def _has_relativizer(g: DepGraph, noun: TokenId, clause: TokenId) -> bool:
    if g.children(noun, "ref"):
        return True
    for k in g.basic_children(clause):
        tok = g.tokens[k.dependent]
        if (tok.xpos or "").startswith("W") or tok.feats.get("PronType") == "Rel":
            return True
    return False


def noun_modifying_clauses(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Reduced relatives and participial modifiers get the modified noun as an argument."""
    for e in g.edges_labeled("acl"):
        noun, c = e.head, e.dependent
        if c.is_null or noun == ROOT or g.has_edge(c, noun):
            continue
        if _has_relativizer(g, noun, c) or g.basic_children(c, "mark"):
            continue
        xpos = g.tokens[c].xpos or ""
        subject = has_subject(g, c)
        if e.label == "acl:relcl":
            if not subject:
                add(g, c, noun, "nsubj", src("acl", "reduced"))
            elif not g.children(c, "dobj"):
                add(g, c, noun, "dobj", src("acl", "reduced"))
        elif not subject and xpos == "VBG":
            add(g, c, noun, "nsubj", src("acl", "participle"))
        elif not subject and xpos == "VBN":
            add(g, c, noun, "nsubjpass", src("acl", "participle"))
    return g


def _external_subjects(g: DepGraph, label: str, unc: bool, verbal_only: bool) -> None:
    for e in sorted(g.edges_labeled(label), key=lambda e: (e.dependent, e.head)):
        m, c = e.head, e.dependent
        if c.is_null or (verbal_only and not is_verbal(g, c)) or has_subject(g, c):
            continue
        inside = g.subtree_tokens(c)
        subjects = [k for k in _core_kids(g, m, c, NOMINAL_SUBJECTS) if k.dependent not in inside]
        objects = [k for k in _core_kids(g, m, c, ("dobj",)) if k.dependent not in inside]
        if not subjects:
            continue
        sub = marker(g, c, ("mark",)) or marker(g, c, ("case",))
        alt = g.new_alt() if objects else None
        for k in subjects + objects:
            add(g, c, k.dependent, "nsubj", EdgeInfo((label, sub), unc, alt))


def advcl_subjects(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Subjectless adverbial clauses take the matrix subject (and object, as alternatives)."""
    _external_subjects(g, "advcl", unc=False, verbal_only=False)
    return g


def dep_as_advcl(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Verbal ``dep`` dependents are treated like adverbial clauses, uncertainly."""
    _external_subjects(g, "dep", unc=True, verbal_only=True)
    return g


# --- parallel structures ---------------------------------------------------

_APPOS_SKIP_IN = {"det", "punct", "case", "appos", "root", "ref"}
_APPOS_SKIP_OUT = _APPOS_SKIP_IN | {"amod", "compound", "nmod:poss", "nummod", "mwe", "name",
                                    "cc", "conj", "acl", "cop", "aux", "mark", "nmod"}


def apposition_sharing(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """The appositive inherits the relations of the noun it renames."""
    for e in g.edges_labeled("appos"):
        a, b = e.head, e.dependent
        inside = g.subtree_tokens(b)
        for p in g.parents(a):
            if base(p.label) in _APPOS_SKIP_IN or p.head in inside:
                continue
            add(g, p.head, b, p.label, inherit("appos", None, p))
        for k in g.children(a):
            if k.label in _APPOS_SKIP_OUT or base(k.label) in _APPOS_SKIP_OUT or k.dependent in inside:
                continue
            add(g, b, k.dependent, k.label, inherit("appos", None, k))
    return g


def conj_modifier_sharing(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Prepositional and possessive modifiers outside a coordination are shared, uncertainly."""
    for e in g.edges_labeled("conj"):
        h, c = e.head, e.dependent
        if c.is_null:
            continue
        word = cc_word(g, h, c)
        nmods = [k for k in g.children(h, "nmod") if k.label != "nmod:poss"]
        if not [k for k in g.children(c, "nmod") if k.label != "nmod:poss"]:
            for k in nmods:
                if k.dependent > c and k.dependent not in g.subtree_tokens(c):
                    add(g, c, k.dependent, k.label, inherit("conj", word, k, unc=True))
        if not g.children(c, "nmod:poss"):
            for k in g.children(h, "nmod:poss"):
                if k.dependent < h:
                    add(g, c, k.dependent, k.label, inherit("conj", word, k, unc=True))
    return g


def elaboration_specification(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """``fruits such as apples``: apples inherits the relations governing fruits."""
    markers = _ctx(ctx).lexicons.elaboration_markers
    for e in g.edges_labeled("nmod"):
        h, d = e.head, e.dependent
        m = marker(g, d, ("case",))
        if m not in markers:
            continue
        inside = g.subtree_tokens(d)
        for p in g.parents(h):
            if base(p.label) in ("root", "punct") or p.head in inside:
                continue
            add(g, p.head, d, p.label, inherit("nmod", m, p))
    return g


def _main_verb(g: DepGraph, node: TokenId) -> TokenId:
    for cand in [node] + g.basic_ancestors(node):
        if is_verbal(g, cand):
            return cand
    return next(e.dependent for e in g.basic if e.head == ROOT)


def indexicals(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """An indexical adverb on a noun inside an nmod also modifies the main verb."""
    words = _ctx(ctx).lexicons.indexicals
    for e in g.edges_labeled("advmod"):
        noun, adv = e.head, e.dependent
        if g.lemma(adv) not in words or noun.is_null:
            continue
        up = g.basic_head(noun)
        if up is None or base(up.label) != "nmod" or up.head == ROOT:
            continue
        verb = _main_verb(g, up.head)
        if verb in (adv, noun) or g.has_edge(verb, adv, "advmod"):
            continue
        add(g, verb, adv, "advmod", src("advmod", "indexical", unc=True))
    return g


def compound_sharing(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Compound modifiers share the core relations of their head, uncertainly."""
    for e in g.edges_labeled("compound"):
        if e.label != "compound":
            continue
        h, m = e.head, e.dependent
        for p in g.parents(h):
            if base(p.label) in CORE and p.head != m:
                add(g, p.head, m, p.label, inherit("compound", None, p, unc=True))
    return g


# --- alternations ----------------------------------------------------------

def _is_agent(g: DepGraph, e: Edge) -> bool:
    if e.label in ("nmod:by", "nmod:agent"):
        return True
    return e.label == "nmod" and marker(g, e.dependent, ("case",)) == "by"


def passivization(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Passive clauses also get the active-voice subject and object."""
    for v in g.nodes():
        patients = g.children(v, "nsubjpass")
        if not patients and not g.basic_children(v, "auxpass"):
            continue
        for k in patients:
            add(g, v, k.dependent, "dobj", inherit("passive", None, k))
        for k in g.children(v, "nmod"):
            if _is_agent(g, k):
                add(g, v, k.dependent, "nsubj", inherit("passive", None, k))
    return g


def _is_hyphen(g: DepGraph, node: TokenId) -> bool:
    tok = g.tokens.get(node)
    return tok is not None and tok.form == "-" and (tok.xpos == "HYPH" or tok.deprel == "punct")


def hyphen_reconstruction(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """``Miami-based company``: based gets company as subject and Miami as modifier."""
    for e in g.edges():
        if e.label != "compound":
            continue
        verb, noun = e.head, e.dependent
        if verb.is_null or noun.is_null or verb.major != noun.major + 2:
            continue
        if not is_verbal(g, verb) or not _is_hyphen(g, TokenId(noun.major + 1)):
            continue
        for p in g.parents(verb, "amod"):
            info = src("hyphen")
            add(g, verb, p.head, "nsubj", info)
            add(g, verb, noun, "nmod", info)
    return g


def adjectival_subjects(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """``dead people``: the adjective takes the noun as its subject."""
    for e in g.edges_labeled("amod"):
        if e.label != "amod" or not e.info.is_ud:
            continue
        noun, adj = e.head, e.dependent
        if noun == ROOT or g.has_edge(adj, noun):
            continue
        add(g, adj, noun, "nsubj", src("amod"))
    return g


def genitive_compound(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """``army of zombies`` is also expressed as the compound ``zombie army``."""
    for e in g.edges_labeled("nmod"):
        h, d = e.head, e.dependent
        if h == ROOT or not is_nominal(g, h):
            continue
        if e.label == "nmod:of" or (e.label == "nmod" and marker(g, d, ("case",)) == "of"):
            add(g, h, d, "compound", src("nmod", "of"))
    return g


# --- event structure -------------------------------------------------------

def _reattach_clause(g: DepGraph, old: TokenId, new: TokenId, info: EdgeInfo,
                     to_mark_head: TokenId) -> None:
    """Move ``old``'s parents and clause-level children to ``new``."""
    for p in g.parents(old):
        if p.head != new:
            move(g, p, dep=new, info=inherit(info.src[0], info.src[1], p))
    for k in g.children(old):
        if base(k.label) not in CLAUSE_LEVEL or k.dependent == new:
            continue
        target = to_mark_head if (base(k.label) == "mark" and g.lemma(k.dependent) == "to") else new
        if target != old:
            move(g, k, head=target, info=inherit(info.src[0], info.src[1], k))


def _attach_predicate(g: DepGraph, head: TokenId, pred: TokenId, subjects: list[Edge],
                      info: EdgeInfo) -> None:
    case = marker(g, pred, ("case",))
    add(g, head, pred, f"nmod:{case}" if case else "xcomp", info)
    if is_adjectival(g, pred):
        for s in subjects:
            if base(s.label) in NOMINAL_SUBJECTS:
                add(g, s.dependent, pred, "amod", info)


def copula_state(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Copular clauses are re-headed by a STATE node that the copula modifies via ``ev``.

    Without STATE nodes (``ctx.state_node`` false) the copula itself becomes
    the head and no ``ev`` edge is added.
    """
    ctx = _ctx(ctx)
    info = src("copula")
    for e in sorted(g.edges_labeled("cop"), key=lambda e: e.dependent):
        pred, cop = e.head, e.dependent
        if pred.is_null or cop.is_null or not g.has_edge(pred, cop, e.label):
            continue
        head = g.add_node(cop, "state").index if ctx.state_node else cop
        subjects = [k for k in g.children(pred) if base(k.label) in SUBJECTS and k.dependent != head]
        for k in subjects:
            move(g, k, head=head, info=inherit("copula", None, k))
        g.remove_edge(pred, cop, e.label)
        if ctx.state_node:
            add(g, head, cop, "ev", info)
        _reattach_clause(g, pred, head, info, to_mark_head=cop)
        _attach_predicate(g, head, pred, subjects, info)
    return g


def _copula_of_state(g: DepGraph, state: TokenId, exclude: TokenId) -> TokenId | None:
    for k in g.children(state, "ev"):
        if k.dependent != exclude and k.info.src == ("copula", None):
            return k.dependent
    return None


def _event_complement(g: DepGraph, verb: TokenId, comp: Edge, kind: str) -> None:
    info = src(kind)
    subjects = [k for k in g.children(verb) if base(k.label) in SUBJECTS and k.dependent != comp.dependent]
    for k in subjects:
        g.remove_edge(k.head, k.dependent, k.label)
    g.remove_edge(comp.head, comp.dependent, comp.label)
    event = comp.dependent
    for k in subjects:
        add(g, event, k.dependent, k.label, inherit(kind, None, k))
    _reattach_clause(g, verb, event, info, to_mark_head=verb)


def evidential_rewiring(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Evidential verbs modify their complement's event; reporting verbs mark theirs with ``ev``."""
    ctx = _ctx(ctx)
    lex = ctx.lexicons
    for v in g.nodes():
        if v.is_null:
            continue
        lemma = g.lemma(v)
        for comp in g.children(v, "xcomp"):
            m = comp.dependent
            if g.kind(m) == "state":
                cop = _copula_of_state(g, m, v)
                if cop is None or (lemma not in lex.evidential_verbs and lemma != "be"):
                    continue
                _event_complement(g, v, comp, "evidential")
                add(g, cop, v, "ev", src("evidential"))
            elif lemma not in lex.evidential_verbs or m.is_null:
                continue
            elif is_verbal(g, m):
                _event_complement(g, v, comp, "evidential")
                add(g, m, v, "ev", src("evidential"))
            elif ctx.state_node and (is_adjectival(g, m) or is_nominal(g, m)):
                info = src("evidential")
                state = g.add_node(v, "state").index
                subjects = [k for k in g.children(v) if base(k.label) in SUBJECTS and k.dependent != m]
                for k in subjects:
                    move(g, k, head=state, info=inherit("evidential", None, k))
                g.remove_edge(v, m, comp.label)
                add(g, state, v, "ev", info)
                _reattach_clause(g, v, state, info, to_mark_head=v)
                _attach_predicate(g, state, m, subjects, info)
            else:
                continue
            break
        if lemma in lex.reported_speech_verbs:
            for comp in g.children(v, "ccomp"):
                add(g, comp.dependent, v, "ev", src("reported"))
    return g


def aspectual_rewiring(g: DepGraph, ctx: Context | None = None) -> DepGraph:
    """Aspectual verbs with a gerund or to-infinitive complement become ``ev`` modifiers of it."""
    verbs = _ctx(ctx).lexicons.aspectual_verbs
    for v in g.nodes():
        if v.is_null or g.lemma(v) not in verbs:
            continue
        for comp in g.children(v, "xcomp"):
            m = comp.dependent
            if m.is_null or not is_verbal(g, m):
                continue
            if (g.tokens[m].xpos or "") != "VBG" and marker(g, m, ("mark",)) != "to":
                continue
            _event_complement(g, v, comp, "aspectual")
            add(g, m, v, "ev", src("aspectual"))
            break
    return g
