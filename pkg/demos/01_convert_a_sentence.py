"""Convert one UD tree and list what the conversion added and removed.

Run:  python demos/01_convert_a_sentence.py
"""
from udbart import ROOT, convert_sentence, parse_conllu, serialize_conllu

TREE = """# text = Neo the One is a hero for chasing this army of Robots
1	Neo	Neo	PROPN	NNP	_	6	nsubj	_	_
2	the	the	DET	DT	_	3	det	_	_
3	One	one	PROPN	NNP	_	1	appos	_	_
4	is	be	AUX	VBZ	_	6	cop	_	_
5	a	a	DET	DT	_	6	det	_	_
6	hero	hero	NOUN	NN	_	0	root	_	_
7	for	for	SCONJ	IN	_	8	mark	_	_
8	chasing	chase	VERB	VBG	_	6	advcl	_	_
9	this	this	DET	DT	_	10	det	_	_
10	army	army	NOUN	NN	_	8	dobj	_	_
11	of	of	ADP	IN	_	12	case	_	_
12	Robots	robot	NOUN	NNS	_	10	nmod	_	_
"""

sent = parse_conllu(TREE)[0]
out = convert_sentence(sent)
print(serialize_conllu([out]))

words = {t.id: t.form for t in out.tokens}
words[ROOT] = "ROOT"
basic = {(t.head, t.id, t.deprel) for t in sent.tokens}
enhanced = {(h, t.id, lab.split("@")[0], lab) for t in out.tokens for h, lab in t.deps}


def extends(h, d, label, basic_edge):
    # same arc, same label or the basic label plus a case/marker subtype
    bh, bd, bl = basic_edge
    return (h, d) == (bh, bd) and (label == bl or label.startswith(bl + ":"))


print("added:")
for h, d, label, raw in sorted(enhanced):
    if not any(extends(h, d, label, b) for b in basic):
        print(f"  {raw}({words[h]}, {words[d]})")
print("relabelled:")
for h, d, label, raw in sorted(enhanced):
    for b in basic:
        if extends(h, d, label, b) and label != b[2]:
            print(f"  {b[2]}({words[h]}, {words[d]}) -> {label}")
print("removed:")
for b in sorted(basic):
    if not any(extends(h, d, label, b) for h, d, label, _ in enhanced):
        print(f"  {b[2]}({words[b[0]]}, {words[b[1]]})")
