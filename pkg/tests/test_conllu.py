import pytest
from hypothesis import given, strategies as st

from udbart import (
    ConlluError, EdgeInfo, TokenId, UD, decode_extra, encode_extra,
    normalize_v2_labels, parse_conllu, serialize_conllu,
)
from udbart.conllu import validate_sentence

SAMPLE = """# sent_id = s1
# text = I can't go
1\tI\tI\tPRON\tPRP\tCase=Nom|Number=Sing\t3\tnsubj\t3:nsubj|3.1:nsubj@src=copula;unc\t_
2-3\tcan't\t_\t_\t_\t_\t_\t_\t_\tSpaceAfter=No
2\tca\tcan\tAUX\tMD\t_\t3\taux\t3:aux\t_
3\tn't\tnot\tPART\tRB\t_\t0\troot\t0:root\t_
3.1\tSTATE\tSTATE\t_\t_\t_\t_\t_\t0:root@src=copula\t_

# sent_id = s2
1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\tFlag

"""


def test_parse_fields():
    s1, s2 = parse_conllu(SAMPLE)
    assert s1.metadata == {"sent_id": "s1", "text": "I can't go"}
    assert [str(t.id) for t in s1.tokens] == ["1", "2", "3", "3.1"]
    tok = s1.tokens[0]
    assert tok.feats == {"Case": "Nom", "Number": "Sing"}
    assert tok.deps == [(TokenId(3), "nsubj"), (TokenId(3, 1), "nsubj@src=copula;unc")]
    assert s1.tokens[3].is_null and s1.tokens[3].head is None
    assert s1.multiwords[0].form == "can't" and (s1.multiwords[0].start, s1.multiwords[0].end) == (2, 3)
    assert s2.tokens[0].misc == {"Flag": None}
    assert s2.tokens[0].deps == []


def test_serialize_roundtrip_is_textual_identity_on_canonical_input():
    assert serialize_conllu(parse_conllu(SAMPLE)) == SAMPLE


def test_token_id_ordering_and_text():
    ids = [TokenId.parse(x) for x in ("10", "2.1", "2", "2.10", "2.2")]
    assert [str(i) for i in sorted(ids)] == ["2", "2.1", "2.2", "2.10", "10"]
    with pytest.raises(ValueError):
        TokenId.parse("1.x")


@pytest.mark.parametrize("bad,needle", [
    ("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\n", "10 columns"),
    ("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n2\tx\tx\tX\tX\t_\t7\tdep\t_\t_\n", "7"),
    ("x\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n", "x"),
    ("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t9:dep\t_\n", "9"),
])
def test_strict_errors_carry_line_numbers(bad, needle):
    with pytest.raises(ConlluError) as info:
        parse_conllu(bad)
    assert info.value.lineno is not None
    assert needle in str(info.value)


def test_lenient_skips_bad_sentence_and_reports():
    text = "1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\n\n" + SAMPLE
    errors = []
    sents = parse_conllu(text, strict=False, errors=errors)
    assert len(sents) == 2 and len(errors) == 1 and errors[0].lineno == 1


def test_validate_rejects_two_roots():
    s = parse_conllu("1\ta\ta\tX\tX\t_\t0\troot\t_\t_\n2\tb\tb\tX\tX\t_\t1\tdep\t_\t_\n")[0]
    s.tokens[1].head = TokenId(0)
    with pytest.raises(ValueError, match="head 0"):
        validate_sentence(s)


def test_v2_labels():
    s = parse_conllu("1\ta\ta\tX\tX\t_\t2\tnsubj:pass\t_\t_\n2\tb\tb\tX\tX\t_\t0\troot\t_\t_\n"
                     "3\tc\tc\tX\tX\t_\t2\tobl\t_\t_\n")
    normalize_v2_labels(s)
    assert [t.deprel for t in s[0].tokens] == ["nsubjpass", "root", "nmod"]


@pytest.mark.parametrize("text,label,info", [
    ("nsubj", "nsubj", UD),
    ("nsubj@src=advcl_while;alt=0", "nsubj", EdgeInfo(("advcl", "while"), False, 0)),
    ("dobj@src=compound;unc", "dobj", EdgeInfo(("compound", None), True)),
    ("nmod:such_as", "nmod:such_as", UD),
    ("dobj@src=nmod_such_as", "dobj", EdgeInfo(("nmod", "such_as"))),
])
def test_decode_known(text, label, info):
    assert decode_extra(text) == (label, info)
    assert encode_extra(label, info) == text


@pytest.mark.parametrize("text,key", [
    ("nsubj@src=x;src=y", "src"),
    ("nsubj@src=x;bogus", "bogus"),
    ("nsubj@unc", "unc"),       # UD edge with unc
    ("nsubj@src=x;alt=-1", "alt"),
    ("@src=x", "empty"),
])
def test_decode_malformed(text, key):
    with pytest.raises(ValueError, match=key):
        decode_extra(text)


labels = st.from_regex(r"[a-z]{1,6}(:[a-z_]{1,5})?", fullmatch=True)
infos = st.one_of(
    st.just(UD),
    st.builds(EdgeInfo,
              st.tuples(st.from_regex(r"[a-z][a-z0-9]{0,7}", fullmatch=True),
                        st.one_of(st.none(), st.from_regex(r"[a-z0-9][a-z0-9_]{0,7}", fullmatch=True))),
              st.booleans(), st.one_of(st.none(), st.integers(0, 50))),
)


@given(labels, infos)
def test_encode_decode_identity(label, info):
    assert decode_extra(encode_extra(label, info)) == (label, info)


def test_empty_input_and_empty_sentence():
    from udbart import Sentence
    assert parse_conllu("") == []
    with pytest.raises(ValueError, match="token"):
        serialize_conllu([Sentence([], [])])


def test_five_token_sentence_fields():
    text = ("1\tYou\tyou\tPRON\tPRP\t_\t3\tnsubj\t_\t_\n2\tshouldn't\tshould\tAUX\tMD\t_\t3\taux\t_\t_\n"
            "3\ttext\ttext\tVERB\tVB\t_\t0\troot\t_\t_\n4\twhile\twhile\tSCONJ\tIN\t_\t5\tmark\t_\t_\n"
            "5\tdriving\tdrive\tVERB\tVBG\t_\t3\tadvcl\t_\t_\n")
    (s,) = parse_conllu(text)
    assert [(t.form, t.lemma, t.upos, t.xpos, str(t.head), t.deprel) for t in s.tokens] == [
        ("You", "you", "PRON", "PRP", "3", "nsubj"), ("shouldn't", "should", "AUX", "MD", "3", "aux"),
        ("text", "text", "VERB", "VB", "0", "root"), ("while", "while", "SCONJ", "IN", "5", "mark"),
        ("driving", "drive", "VERB", "VBG", "3", "advcl")]
    assert [t.form for t in s.tokens if str(t.head) == "0"] == ["text"]


def test_serialize_is_deterministic_and_sorts_deps():
    s = parse_conllu(SAMPLE)[0]
    s.tokens[0].deps = list(reversed(s.tokens[0].deps))
    once = serialize_conllu([s])
    assert once == serialize_conllu(parse_conllu(SAMPLE)[:1])
    assert once == serialize_conllu(parse_conllu(once))
    assert "3:nsubj|3.1:nsubj@src=copula;unc" in once
