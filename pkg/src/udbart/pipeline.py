"""Rule registry and the fixpoint driver that applies it."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import bart, eud
from ._ud import Context
from .conllu import Sentence
from .graph import DepGraph, from_sentence
from .lexicons import Lexicons

__all__ = [
    "ConversionConfig", "ConversionRule", "MODES", "REGISTRY", "RULE_IDS", "SRC_TYPES",
    "convert", "convert_sentence", "renumber_alternatives", "run_pipeline",
]

log = logging.getLogger(__name__)

FAMILIES = ("eud", "nested", "parallel", "alternation", "event")
MODES = ("ud", "eud", "bart", "bart-no-eud")


@dataclass(frozen=True)
class ConversionRule:
    id: str
    family: str
    apply: Callable[[DepGraph, Context], DepGraph]
    description: str
    enabled: bool = True


def _rule(fn, family: str) -> ConversionRule:
    doc = (fn.__doc__ or "").strip().splitlines()[0]
    return ConversionRule(fn.__name__, family, fn, doc)


REGISTRY: tuple[ConversionRule, ...] = (
    _rule(eud.augment_case_labels, "eud"),
    _rule(eud.expand_conjoined_prepositions, "eud"),
    _rule(eud.propagate_conjuncts, "eud"),
    _rule(eud.link_relative_clauses, "eud"),
    _rule(eud.control_xcomp_to, "eud"),
    _rule(bart.extended_control, "nested"),
    _rule(bart.noun_modifying_clauses, "nested"),
    _rule(bart.advcl_subjects, "nested"),
    _rule(bart.dep_as_advcl, "nested"),
    _rule(bart.apposition_sharing, "parallel"),
    _rule(bart.conj_modifier_sharing, "parallel"),
    _rule(bart.elaboration_specification, "parallel"),
    _rule(bart.indexicals, "parallel"),
    _rule(bart.compound_sharing, "parallel"),
    _rule(bart.passivization, "alternation"),
    _rule(bart.hyphen_reconstruction, "alternation"),
    _rule(bart.adjectival_subjects, "alternation"),
    _rule(bart.genitive_compound, "alternation"),
    _rule(bart.copula_state, "event"),
    _rule(bart.evidential_rewiring, "event"),
    _rule(bart.aspectual_rewiring, "event"),
)
RULE_IDS = tuple(r.id for r in REGISTRY)

# construction types that may appear in an edge's src field
SRC_TYPES = frozenset({
    "conj", "relcl", "xcomp", "ccomp", "acl", "advcl", "dep", "appos", "nmod", "advmod",
    "compound", "passive", "hyphen", "amod", "copula", "evidential", "reported", "aspectual",
})

# rules allowed to delete enhanced edges
REMOVING_RULES = frozenset({"link_relative_clauses", "copula_state", "evidential_rewiring",
                            "aspectual_rewiring"})


@dataclass
class ConversionConfig:
    mode: str = "bart"
    disabled: frozenset[str] = frozenset()
    enabled: frozenset[str] = frozenset()
    state_node: bool = True
    max_iterations: int = 3
    lexicons: Lexicons = field(default_factory=Lexicons.default)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        unknown = (set(self.disabled) | set(self.enabled)) - set(RULE_IDS)
        if unknown:
            raise ValueError(f"unknown rule id(s): {', '.join(sorted(unknown))}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        self.disabled = frozenset(self.disabled)
        self.enabled = frozenset(self.enabled)

    def active_rules(self) -> list[ConversionRule]:
        families = {
            "ud": (),
            "eud": ("eud",),
            "bart": FAMILIES,
            "bart-no-eud": FAMILIES[1:],
        }[self.mode]
        return [r for r in REGISTRY
                if (r.family in families or r.id in self.enabled) and r.id not in self.disabled]


def renumber_alternatives(g: DepGraph) -> None:
    """Renumber Alt groups 0.. in token order of the edges' heads."""
    groups: dict[int, list] = {}
    for e in g.all_records():
        if e.info.alt is not None:
            groups.setdefault(e.info.alt, []).append(e)
    order = sorted(groups, key=lambda a: (min(e.head for e in groups[a]), a))
    mapping = {old: new for new, old in enumerate(order)}
    if all(k == v for k, v in mapping.items()):
        return
    for (h, d, l), recs in g._records.items():
        g._records[(h, d, l)] = [
            (t, info if info.alt is None else type(info)(info.src, info.unc, mapping[info.alt]))
            for t, info in recs]
    g._next_alt = len(order)


def run_pipeline(g: DepGraph, config: ConversionConfig | None = None) -> DepGraph:
    """Apply the active rules in registry order until the enhanced layer stops changing."""
    config = config or ConversionConfig()
    rules = config.active_rules()
    ctx = Context(config.lexicons, config.state_node)
    if not rules:
        return g
    for _ in range(config.max_iterations):
        before = g.snapshot()
        for rule in rules:
            rule.apply(g, ctx)
        if g.snapshot() == before:
            break
    else:
        msg = f"no fixpoint after {config.max_iterations} iterations"
        g.diagnostics.append("warning: " + msg)
        log.warning(msg)
    renumber_alternatives(g)
    return g


def convert_sentence(sent: Sentence, config: ConversionConfig | None = None,
                     seed_from_deps: bool = False) -> Sentence:
    return run_pipeline(from_sentence(sent, seed_from_deps), config).to_sentence()


def convert(sentences: Iterable[Sentence], config: ConversionConfig | None = None,
            seed_from_deps: bool = False) -> list[Sentence]:
    config = config or ConversionConfig()
    return [convert_sentence(s, config, seed_from_deps) for s in sentences]
