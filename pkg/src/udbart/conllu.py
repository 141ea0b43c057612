"""Reading and writing CoNLL-U, including null nodes and edge metadata.

Edge metadata produced by the converter travels inside the DEPS column,
appended to the relation label after an ``@``::

    nsubj@src=advcl_while;alt=0

Keys are emitted in the fixed order ``src``, ``unc``, ``alt``.  An edge that
comes straight from the UD tree carries no suffix at all.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

__all__ = [
    "ConlluError",
    "EdgeInfo",
    "UD",
    "Multiword",
    "Sentence",
    "Token",
    "TokenId",
    "ROOT",
    "decode_extra",
    "encode_extra",
    "normalize_v2_labels",
    "parse_conllu",
    "serialize_conllu",
]


class ConlluError(ValueError):
    """Malformed CoNLL-U input or a sentence that cannot be written."""

    def __init__(self, reason: str, lineno: int | None = None):
        self.reason = reason
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + reason)


class TokenId(NamedTuple):
    """Node index; ``minor > 0`` marks a null node such as ``5.1``."""

    major: int
    minor: int = 0

    def __str__(self) -> str:
        return str(self.major) if self.minor == 0 else f"{self.major}.{self.minor}"

    @property
    def is_null(self) -> bool:
        return self.minor > 0

    @classmethod
    def parse(cls, text: str) -> "TokenId":
        m = _ID_RE.fullmatch(text)
        if m is None:
            raise ValueError(f"non-numeric token id {text!r}")
        major = int(m.group(1))
        minor = int(m.group(2)) if m.group(2) is not None else 0
        if m.group(2) is not None and minor < 1:
            raise ValueError(f"null node minor index must be >= 1 in {text!r}")
        return cls(major, minor)


ROOT = TokenId(0)
_ID_RE = re.compile(r"(\d+)(?:\.(\d+))?")
_RANGE_RE = re.compile(r"(\d+)-(\d+)")


@dataclass(frozen=True)
class EdgeInfo:
    """Provenance of an enhanced edge.

    ``src`` is ``None`` for edges of the original UD tree, otherwise a
    ``(construction, subtype)`` pair such as ``("advcl", "while")``.
    ``unc`` flags an uncertain edge; ``alt`` groups mutually exclusive
    alternatives.
    """

    src: tuple[str, str | None] | None = None
    unc: bool = False
    alt: int | None = None

    def __post_init__(self):
        if self.src is None:
            if self.unc or self.alt is not None:
                raise ValueError("UD edges carry neither unc nor alt")
            return
        kind, sub = self.src
        if not kind or not _SRC_TYPE_RE.fullmatch(kind):
            raise ValueError(f"bad construction type {kind!r}")
        if sub is not None and not _SRC_SUB_RE.fullmatch(sub):
            raise ValueError(f"bad construction subtype {sub!r}")
        if self.alt is not None and self.alt < 0:
            raise ValueError("alt must be non-negative")

    @property
    def is_ud(self) -> bool:
        return self.src is None


UD = EdgeInfo()
_SRC_TYPE_RE = re.compile(r"[a-z][a-z0-9]*")
_SRC_SUB_RE = re.compile(r"[^\s@;=|]+")
_LABEL_RE = re.compile(r"[^\s@|]+")


def encode_extra(label: str, info: EdgeInfo) -> str:
    if not label or not _LABEL_RE.fullmatch(label):
        raise ValueError(f"invalid relation label {label!r}")
    if info.src is None:
        return label
    kind, sub = info.src
    keys = ["src=" + (kind if sub is None else f"{kind}_{sub}")]
    if info.unc:
        keys.append("unc")
    if info.alt is not None:
        keys.append(f"alt={info.alt}")
    return label + "@" + ";".join(keys)


def decode_extra(text: str) -> tuple[str, EdgeInfo]:
    label, sep, suffix = text.partition("@")
    if not label:
        raise ValueError(f"empty relation label in {text!r}")
    if not sep:
        return label, UD
    src = None
    unc = False
    alt = None
    seen = set()
    for key in suffix.split(";"):
        name, eq, value = key.partition("=")
        if name in seen:
            raise ValueError(f"duplicate key {name!r} in {text!r}")
        seen.add(name)
        if name == "src" and eq and value:
            kind, _, sub = value.partition("_")
            src = (kind, sub or None)
        elif name == "unc" and not eq:
            unc = True
        elif name == "alt" and eq and value.isdigit():
            alt = int(value)
        else:
            raise ValueError(f"malformed key {name or key!r} in {text!r}")
    try:
        return label, EdgeInfo(src, unc, alt)
    except ValueError as exc:
        raise ValueError(f"malformed metadata in {text!r}: {exc}") from None


@dataclass
class Token:
    id: TokenId
    form: str | None = None
    lemma: str | None = None
    upos: str | None = None
    xpos: str | None = None
    feats: dict[str, str] = field(default_factory=dict)
    head: TokenId | None = None
    deprel: str | None = None
    deps: list[tuple[TokenId, str]] = field(default_factory=list)
    misc: dict[str, str | None] = field(default_factory=dict)

    @property
    def is_null(self) -> bool:
        return self.id.is_null


@dataclass
class Multiword:
    """A ``i-j`` range line; carried through untouched."""

    start: int
    end: int
    form: str | None = None
    misc: dict[str, str | None] = field(default_factory=dict)


@dataclass
class Sentence:
    tokens: list[Token]
    comments: list[str] = field(default_factory=list)
    multiwords: list[Multiword] = field(default_factory=list)

    @property
    def metadata(self) -> dict[str, str]:
        meta = {}
        for line in self.comments:
            key, eq, value = line[1:].partition("=")
            if eq:
                meta[key.strip()] = value.strip()
        return meta

    @property
    def text(self) -> str:
        return self.metadata.get("text") or " ".join(
            t.form or "_" for t in self.tokens if not t.is_null
        )

    def token(self, tid: TokenId) -> Token:
        for tok in self.tokens:
            if tok.id == tid:
                return tok
        raise KeyError(str(tid))


# --- parsing ---------------------------------------------------------------

def _opt(value: str) -> str | None:
    return None if value == "_" else value


def _parse_pairs(value: str, what: str) -> dict:
    if value == "_":
        return {}
    out: dict = {}
    for item in value.split("|"):
        if not item:
            raise ValueError(f"empty {what} item")
        key, eq, val = item.partition("=")
        out[key] = val if eq else None
    return out


def _parse_deps(value: str) -> list[tuple[TokenId, str]]:
    if value == "_":
        return []
    deps = []
    for item in value.split("|"):
        head, colon, label = item.partition(":")
        if not colon or not label:
            raise ValueError(f"malformed DEPS item {item!r}")
        deps.append((TokenId.parse(head), label))
    return deps


def _parse_token(cols: list[str]) -> Token:
    tid = TokenId.parse(cols[0])
    head = None if cols[6] == "_" else TokenId.parse(cols[6])
    if head is not None and head.is_null:
        raise ValueError("basic HEAD cannot be a null node")
    if tid.is_null and head is not None:
        raise ValueError("null nodes have no basic HEAD")
    return Token(
        id=tid,
        form=_opt(cols[1]),
        lemma=_opt(cols[2]),
        upos=_opt(cols[3]),
        xpos=_opt(cols[4]),
        feats=_parse_pairs(cols[5], "FEATS"),
        head=head,
        deprel=_opt(cols[7]),
        deps=_parse_deps(cols[8]),
        misc=_parse_pairs(cols[9], "MISC"),
    )


def _check_references(sent: Sentence) -> None:
    ids = {t.id for t in sent.tokens}
    if len(ids) != len(sent.tokens):
        raise ValueError("duplicate token id")
    for tok in sent.tokens:
        if tok.head is not None and tok.head != ROOT and tok.head not in ids:
            raise ValueError(f"token {tok.id} has dangling head {tok.head}")
        for head, _ in tok.deps:
            if head != ROOT and head not in ids:
                raise ValueError(f"token {tok.id} has dangling DEPS head {head}")


def parse_conllu(text: str | Iterable[str], strict: bool = True,
                 errors: list[ConlluError] | None = None) -> list[Sentence]:
    """Parse CoNLL-U text (a string or an iterable of lines).

    With ``strict=False`` a sentence containing a bad line is skipped and the
    error appended to ``errors`` instead of being raised.
    """
    lines = text.splitlines() if isinstance(text, str) else (l.rstrip("\n") for l in text)
    sentences: list[Sentence] = []
    comments: list[str] = []
    tokens: list[Token] = []
    multiwords: list[Multiword] = []
    failure: ConlluError | None = None
    start = 0

    def flush(lineno: int):
        nonlocal comments, tokens, multiwords, failure
        if failure is None and (tokens or multiwords):
            sent = Sentence(tokens, comments, multiwords)
            try:
                _check_references(sent)
            except ValueError as exc:
                failure = ConlluError(str(exc), start)
            else:
                sentences.append(sent)
        if failure is not None:
            if strict:
                raise failure
            if errors is not None:
                errors.append(failure)
        comments, tokens, multiwords, failure = [], [], [], None

    lineno = 0
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush(lineno)
            continue
        if not tokens and not multiwords and not comments:
            start = lineno
        if failure is not None:
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            failure = ConlluError(f"expected 10 columns, found {len(cols)}", lineno)
            continue
        m = _RANGE_RE.fullmatch(cols[0])
        try:
            if m:
                multiwords.append(Multiword(int(m.group(1)), int(m.group(2)),
                                            _opt(cols[1]), _parse_pairs(cols[9], "MISC")))
            else:
                tokens.append(_parse_token(cols))
        except ValueError as exc:
            failure = ConlluError(str(exc), lineno)
    flush(lineno + 1)
    return sentences


# --- writing ---------------------------------------------------------------

def _fmt(value: str | None) -> str:
    return "_" if value is None or value == "" else value


def _fmt_pairs(pairs: dict) -> str:
    if not pairs:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in pairs.items())


def _fmt_deps(deps: list[tuple[TokenId, str]]) -> str:
    if not deps:
        return "_"
    return "|".join(f"{h}:{label}" for h, label in sorted(set(deps)))


def validate_sentence(sent: Sentence) -> None:
    """Raise ConlluError naming the first violated sentence invariant."""
    if not sent.tokens:
        raise ConlluError("sentence must have at least one token")
    ids = [t.id for t in sent.tokens]
    if len(set(ids)) != len(ids):
        raise ConlluError("token ids must be unique")
    surface = [t for t in sent.tokens if not t.is_null]
    if [t.id.major for t in surface] != list(range(1, len(surface) + 1)):
        raise ConlluError("surface token ids must be consecutive 1..n")
    for tok in sent.tokens:
        if tok.is_null and not 0 <= tok.id.major <= len(surface):
            raise ConlluError(f"null node {tok.id} lies outside the sentence")
    roots = [t for t in surface if t.head == ROOT]
    if len(roots) != 1:
        raise ConlluError(f"exactly one surface token must have head 0, found {len(roots)}")
    try:
        _check_references(sent)
    except ValueError as exc:
        raise ConlluError(str(exc)) from None
    for tok in surface:
        if tok.head is None:
            raise ConlluError(f"surface token {tok.id} has no basic head")


def _token_line(tok: Token) -> str:
    return "\t".join([
        str(tok.id), _fmt(tok.form), _fmt(tok.lemma), _fmt(tok.upos), _fmt(tok.xpos),
        _fmt_pairs(tok.feats), "_" if tok.head is None else str(tok.head),
        _fmt(tok.deprel), _fmt_deps(tok.deps), _fmt_pairs(tok.misc),
    ])


def serialize_conllu(sentences: Iterable[Sentence]) -> str:
    out = []
    for sent in sentences:
        validate_sentence(sent)
        out.extend(sent.comments)
        ranges = {mw.start: mw for mw in sent.multiwords}
        for tok in sorted(sent.tokens, key=lambda t: t.id):
            mw = ranges.get(tok.id.major) if not tok.is_null else None
            if mw is not None:
                out.append(f"{mw.start}-{mw.end}\t{_fmt(mw.form)}\t_\t_\t_\t_\t_\t_\t_\t"
                           + _fmt_pairs(mw.misc))
            out.append(_token_line(tok))
        out.append("")
    return "".join(line + "\n" for line in out)


V2_TO_V1 = {
    "obj": "dobj",
    "obl": "nmod",
    "nsubj:pass": "nsubjpass",
    "csubj:pass": "csubjpass",
    "aux:pass": "auxpass",
    "obl:tmod": "nmod:tmod",
    "obl:npmod": "nmod:npmod",
    "obl:agent": "nmod:agent",
    "fixed": "mwe",
    "flat": "name",
}


def normalize_v2_labels(sentences: Iterable[Sentence]) -> list[Sentence]:
    """Rewrite UD v2 basic labels to the v1 names the converter expects (in place)."""
    sentences = list(sentences)
    for sent in sentences:
        for tok in sent.tokens:
            if tok.deprel in V2_TO_V1:
                tok.deprel = V2_TO_V1[tok.deprel]
    return sentences
