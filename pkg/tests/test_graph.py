import pytest

from udbart import EdgeInfo, GraphError, TokenId, UD, from_sentence
from udbart.graph import label_matches

from helpers import tree

T = TokenId
SENT = """Sam Sam PROPN NNP 2 nsubj
ran run VERB VBD 0 root
home home ADV RB 2 advmod"""


def graph():
    return from_sentence(tree(SENT))


def test_enhanced_layer_starts_as_basic_tree():
    g = graph()
    assert [(str(e.head), str(e.dependent), e.label) for e in g.edges()] == [
        ("0", "2", "root"), ("2", "1", "nsubj"), ("2", "3", "advmod")]
    assert all(e.info == UD for e in g.edges())


def test_parallel_records_and_primary_choice():
    g = graph()
    unc = EdgeInfo(("dep", None), True)
    certain = EdgeInfo(("advcl", "while"))
    assert g.add_edge(T(3), T(1), "nsubj", unc)
    assert g.add_edge(T(3), T(1), "nsubj", certain)
    assert not g.add_edge(T(3), T(1), "nsubj", certain)  # same src: no-op
    assert g.records(T(3), T(1), "nsubj") == [unc, certain]
    assert g.info(T(3), T(1), "nsubj") == certain  # certain beats uncertain
    assert g.info(T(2), T(1), "nsubj") == UD


def test_add_edge_errors():
    g = graph()
    with pytest.raises(GraphError):
        g.add_edge(T(2), T(9), "dep")
    with pytest.raises(GraphError):
        g.add_edge(T(2), T(2), "dep")
    with pytest.raises(GraphError):
        g.add_edge(T(2), T(0), "dep")


def test_remove_absent_edge_is_diagnostic():
    g = graph()
    assert not g.remove_edge(T(3), T(1), "nsubj")
    assert g.diagnostics and "absent" in g.diagnostics[0]
    assert g.remove_edge(T(2), T(1), "nsubj")
    assert g.removal_log[0].label == "nsubj"


def test_relabel_keeps_records():
    g = graph()
    g.add_edge(T(2), T(3), "advmod", EdgeInfo(("x", None)))
    g.relabel(T(2), T(3), "advmod", "advmod:home")
    assert g.records(T(2), T(3), "advmod:home") == [UD, EdgeInfo(("x", None))]
    assert not g.has_edge(T(2), T(3), "advmod:x")
    assert g.has_edge(T(2), T(3), "advmod")  # bare label matches subtypes


def test_added_nodes_take_smallest_free_minor():
    g = graph()
    a = g.add_node(T(2), "state")
    b = g.add_node(T(2), "copy", copy_of=T(1))
    assert (str(a.index), a.kind, str(b.index), b.kind) == ("2.1", "state", "2.2", "copy")
    assert g.token(b.index).misc == {"CopyOf": "1"} and g.token(b.index).form == "Sam"
    with pytest.raises(GraphError):
        g.add_node(T(2, 1), "state")


def test_to_sentence_rebuilds_deps_only():
    g = graph()
    g.add_edge(T(3), T(1), "nsubj", EdgeInfo(("dep", None), True))
    s = g.to_sentence()
    assert s.tokens[0].deps == [(T(2), "nsubj"), (T(3), "nsubj@src=dep;unc")]
    assert [t.head for t in s.tokens] == [T(2), T(0), T(2)]


def test_tree_checks():
    s = tree(SENT)
    s.tokens[1].head = T(3)
    with pytest.raises(GraphError, match="root|cycle"):
        from_sentence(s)


def test_seed_from_deps_decodes_metadata():
    s = tree(SENT)
    s.tokens[0].deps = [(T(3), "nsubj@src=advcl_while;alt=1")]
    s.tokens[1].deps = [(T(0), "root")]
    g = from_sentence(s, seed_from_deps=True)
    assert g.info(T(3), T(1), "nsubj") == EdgeInfo(("advcl", "while"), False, 1)
    assert not g.has_edge(T(2), T(1))


@pytest.mark.parametrize("label,wanted,ok", [
    ("nmod:by", "nmod", True), ("nmod", "nmod", True), ("nmod:by", "nmod:of", False),
    ("nmodx", "nmod", False), ("nmod", "nmod:by", False)])
def test_label_matches(label, wanted, ok):
    assert label_matches(label, wanted) is ok


DRIVING = """You you PRON PRP 3 nsubj
shouldn't should AUX MD 3 aux
text text VERB VB 0 root
while while SCONJ IN 5 mark
driving drive VERB VBG 3 advcl"""


def test_queries_on_converted_sentence():
    from udbart import run_pipeline
    g = from_sentence(tree(DRIVING))
    assert len(g.basic) == 5 and sum(e.head != T(0) for e in g.basic) == 4
    run_pipeline(g)
    parents = {(str(e.head), e.info.src) for e in g.parents(T(1), "nsubj")}
    assert parents == {("3", None), ("5", ("advcl", "while"))}
    assert g.children(T(3), "nonexistent") == []
    assert [str(e.head) for e in g.parents(T(5), "advcl")] == ["3"]
    assert [e.label for e in g.children(T(3), "advcl")] == ["advcl:while"]


def test_subtree_tokens():
    from helpers import FIXTURES, load
    g = from_sentence(load(FIXTURES / "figures" / "neo_the_one_is_a_hero.conllu")[0])
    assert g.subtree_tokens(T(10)) == {T(9), T(10), T(11), T(12)}


def test_single_token_sentence():
    g = from_sentence(tree("Go go VERB VB 0 root"))
    assert [str(e) for e in g.edges()] == ["root(0, 1)"]
    assert len(g.tokens) == 1
