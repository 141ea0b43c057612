"""Hand-derived expectations for constructions not covered by the figure fixtures."""
import pytest

from udbart import ConversionConfig, Lexicons, convert_sentence, from_sentence, run_pipeline
from udbart.pipeline import RULE_IDS

from helpers import run, tree

RELCL = """The the DET DT 2 det
man man NOUN NN 5 nsubj
who who PRON WP 4 nsubj
ate eat VERB VBD 2 acl:relcl
left leave VERB VBD 0 root"""

TO_AND_FROM = """I I PRON PRP 2 nsubj
bike bike VERB VBP 0 root
to to ADP IN 6 case
and and CCONJ CC 5 cc
from from ADP IN 3 conj
work work NOUN NN 2 nmod"""

SALLY = """Sally Sally PROPN NNP 3 nsubj
is be AUX VBZ 3 cop
smart smart ADJ JJ 0 root"""


def test_relative_pronoun_becomes_ref():
    out = run(RELCL, mode="eud")
    assert ("4", "2", "nsubj@src=relcl") in out
    assert ("2", "3", "ref@src=relcl") in out
    assert not any(h == "4" and d == "3" for h, d, _ in out)


def test_object_control():
    out = run("""She she PRON PRP 2 nsubj
asked ask VERB VBD 0 root
him he PRON PRP 2 dobj
to to PART TO 5 mark
leave leave VERB VB 2 xcomp""", mode="eud")
    assert ("5", "3", "nsubj@src=xcomp_to") in out
    assert not any(h == "5" and d == "1" for h, d, _ in out)


def test_conjoined_prepositions_copy_the_noun():
    sent = convert_sentence(tree(TO_AND_FROM), ConversionConfig(mode="eud"))
    copy = sent.tokens[-1]
    assert str(copy.id) == "6.1" and copy.form == "work" and copy.misc == {"CopyOf": "6"}
    assert set(copy.deps) >= {(copy.id.__class__(2), "nmod:from@src=conj_and"),
                              (copy.id.__class__(6), "conj@src=conj_and")}
    assert ("2", "6", "nmod:to") in {(str(h), str(t.id), l) for t in sent.tokens for h, l in t.deps}


def test_coordinator_found_on_later_conjunct():
    out = run("""Tom Tom PROPN NNP 6 nsubj
, , PUNCT , 1 punct
Ann Ann PROPN NNP 1 conj
and and CCONJ CC 5 cc
Bob Bob PROPN NNP 1 conj
ran run VERB VBD 0 root""", mode="eud")
    assert {("6", "3", "nsubj@src=conj_and"), ("6", "5", "nsubj@src=conj_and")} <= out


def test_verb_conjunction_shares_subject_and_object():
    out = run("""Sue Sue PROPN NNP 2 nsubj
bought buy VERB VBD 0 root
and and CCONJ CC 4 cc
ate eat VERB VBD 2 conj
apples apple NOUN NNS 2 dobj""", mode="eud")
    assert {("4", "1", "nsubj@src=conj_and"), ("4", "5", "dobj@src=conj_and")} <= out


def test_agentless_passive_adds_only_object():
    out = run("""The the DET DT 2 det
door door NOUN NN 4 nsubjpass
was be AUX VBD 4 auxpass
opened open VERB VBN 0 root""")
    assert ("4", "2", "dobj@src=passive") in out
    assert not any(l.startswith("nsubj@") for _, _, l in out)


def test_copula_as_head_without_state_node():
    out = run(SALLY, state_node=False)
    assert out == {("0", "2", "root@src=copula"), ("2", "1", "nsubj@src=copula"),
                   ("2", "3", "xcomp@src=copula"), ("1", "3", "amod@src=copula")}


def test_disabling_copula_rule_keeps_tree_and_other_rules():
    out = run(SALLY, disabled=frozenset({"copula_state"}))
    assert out == {("0", "3", "root"), ("3", "1", "nsubj"), ("3", "2", "cop")}


def test_enable_single_rule_in_ud_mode():
    out = run(SALLY, mode="ud", enabled=frozenset({"copula_state"}))
    assert ("2.1", "2", "ev@src=copula") in out


def test_bart_without_eud_skips_case_subtypes():
    out = run("""Bob Bob PROPN NNP 2 nsubj
sat sit VERB VBD 0 root
on on ADP IN 3 case
chairs chair NOUN NNS 2 nmod""".replace("on on ADP IN 3", "on on ADP IN 4"), mode="bart-no-eud")
    assert ("2", "4", "nmod") in out


def test_lexicon_override(tmp_path):
    (tmp_path / "evidential.txt").write_text("# custom\nlook\n")
    lex = Lexicons.from_dir(tmp_path)
    assert lex.evidential_verbs == frozenset({"look"})
    assert "say" in lex.reported_speech_verbs  # missing file falls back to defaults
    rows = """Sam Sam PROPN NNP 2 nsubj
seems seem VERB VBZ 0 root
happy happy ADJ JJ 2 xcomp"""
    out = run(rows, lexicons=lex)
    assert not any(l.startswith("ev") for _, _, l in out)


def test_iteration_cap_warns():
    g = run_pipeline(from_sentence(tree("""Neo Neo PROPN NNP 6 nsubj
the the DET DT 3 det
One one PROPN NNP 1 appos
is be AUX VBZ 6 cop
a a DET DT 6 det
hero hero NOUN NN 0 root""")), ConversionConfig(max_iterations=1))
    assert any(d.startswith("warning: no fixpoint") for d in g.diagnostics)


@pytest.mark.parametrize("bad", [dict(mode="sd"), dict(disabled={"nope"}), dict(max_iterations=0)])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        ConversionConfig(**bad)


def test_registry_ids_unique():
    assert len(set(RULE_IDS)) == len(RULE_IDS) == 21


def test_relative_that_takes_object_role():
    out = run("""the the DET DT 2 det
city city NOUN NN 0 root
that that PRON WDT 5 dobj
Sam Sam PROPN NNP 5 nsubj
visited visit VERB VBD 2 acl:relcl""", mode="eud")
    assert {("5", "2", "dobj@src=relcl"), ("2", "3", "ref@src=relcl")} <= out
    assert ("5", "3", "dobj") not in out


def test_three_verb_conjuncts_share_subject():
    out = run("""Tom Tom PROPN NNP 2 nsubj
ran run VERB VBD 0 root
, , PUNCT , 4 punct
jumped jump VERB VBD 2 conj
and and CCONJ CC 6 cc
swam swim VERB VBD 2 conj""", mode="eud")
    assert {("4", "1", "nsubj@src=conj_and"), ("6", "1", "nsubj@src=conj_and")} <= out


def test_eud_twice_equals_once():
    from udbart import convert_sentence
    once = convert_sentence(tree(TO_AND_FROM), ConversionConfig(mode="eud"))
    twice = convert_sentence(once, ConversionConfig(mode="eud"), seed_from_deps=True)
    assert [t.deps for t in once.tokens] == [t.deps for t in twice.tokens]
