"""Edge metadata (construction, uncertainty, alternatives) and the conversion modes.

Run:  python demos/02_provenance_and_modes.py
"""
from udbart import ConversionConfig, Sentence, Token, TokenId, convert_sentence, decode_extra


def tree(rows: str) -> Sentence:
    toks = []
    for i, row in enumerate(rows.strip().splitlines(), 1):
        form, lemma, upos, xpos, head, rel = row.split()
        toks.append(Token(TokenId(i), form, lemma, upos, xpos, {}, TokenId(int(head)), rel))
    return Sentence(toks, [])


def show(sent: Sentence, config: ConversionConfig | None = None) -> None:
    out = convert_sentence(sent, config)
    forms = {t.id: t.form for t in out.tokens}
    for tok in out.tokens:
        for head, raw in tok.deps:
            label, info = decode_extra(raw)
            if info.is_ud:
                continue
            kind, sub = info.src
            notes = [f"from {kind}" + (f" ({sub})" if sub else "")]
            if info.unc:
                notes.append("uncertain")
            if info.alt is not None:
                notes.append(f"alternative group {info.alt}")
            print(f"  {label}({forms.get(head, 'ROOT')}, {forms[tok.id]}): {', '.join(notes)}")


# an adverbial clause whose missing subject could be either participant
print("You saw me while driving, Sue saw Sam after returning")
show(tree("""You you PRON PRP 2 nsubj
saw see VERB VBD 0 root
me I PRON PRP 2 dobj
while while SCONJ IN 5 mark
driving drive VERB VBG 2 advcl
, , PUNCT , 2 punct
Sue Sue PROPN NNP 8 nsubj
saw see VERB VBD 2 parataxis
Sam Sam PROPN NNP 8 dobj
after after SCONJ IN 11 mark
returning return VERB VBG 8 advcl"""))

copular = tree("""Sally Sally PROPN NNP 3 nsubj
is be AUX VBZ 3 cop
smart smart ADJ JJ 0 root""")
for label, config in [("full conversion (STATE node)", None),
                      ("copula as head", ConversionConfig(state_node=False)),
                      ("EUD only", ConversionConfig(mode="eud")),
                      ("copula rule disabled", ConversionConfig(disabled=frozenset({"copula_state"})))]:
    print(f"\nSally is smart, {label}:")
    show(copular, config)
