"""Build small CoNLL-U sentences from compact rows for tests."""
from pathlib import Path

from udbart import ConversionConfig, Sentence, Token, TokenId, convert_sentence, parse_conllu

FIXTURES = Path(__file__).parent / "fixtures"


def tree(rows: str, sent_id: str = "t") -> Sentence:
    """Rows of ``form lemma upos xpos head deprel``; ids are assigned 1..n."""
    toks = []
    for i, row in enumerate(l for l in rows.strip().splitlines() if l.strip()):
        form, lemma, upos, xpos, head, rel = row.split()
        toks.append(Token(TokenId(i + 1), form, lemma, upos, xpos, {}, TokenId(int(head)), rel))
    text = " ".join(t.form for t in toks)
    return Sentence(toks, [f"# sent_id = {sent_id}", f"# text = {text}"])


def deps_of(sent: Sentence) -> set[tuple[str, str, str]]:
    """All enhanced edges as (head, dependent, encoded label) strings."""
    return {(str(h), str(t.id), lab) for t in sent.tokens for h, lab in t.deps}


def run(rows: str, **cfg) -> set[tuple[str, str, str]]:
    return deps_of(convert_sentence(tree(rows), ConversionConfig(**cfg)))


def load(path) -> list[Sentence]:
    return parse_conllu(Path(path).read_text(encoding="utf-8"))
