"""Word lists that drive the lexically triggered conversions."""
from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = ["Lexicons", "LEXICON_DIR_ENV", "read_word_list"]

LEXICON_DIR_ENV = "UDBART_LEXICON_DIR"

_FILES = {
    "evidential_verbs": "evidential.txt",
    "reported_speech_verbs": "reported_speech.txt",
    "aspectual_verbs": "aspectual.txt",
    "indexicals": "indexicals.txt",
    "elaboration_markers": "elaboration_markers.txt",
}


def read_word_list(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return frozenset(words)


@dataclass(frozen=True)
class Lexicons:
    evidential_verbs: frozenset[str]
    reported_speech_verbs: frozenset[str]
    aspectual_verbs: frozenset[str]
    indexicals: frozenset[str]
    elaboration_markers: frozenset[str]

    @classmethod
    def default(cls) -> "Lexicons":
        env = os.environ.get(LEXICON_DIR_ENV)
        if env:
            return cls.from_dir(env)
        pkg = resources.files("udbart") / "data" / "lexicons"
        return cls(**{f: read_word_list((pkg / name).read_text("utf-8"))
                      for f, name in _FILES.items()})

    @classmethod
    def from_dir(cls, path: str | os.PathLike) -> "Lexicons":
        """Load lexicons from ``path``; files missing there fall back to the defaults."""
        path = Path(path)
        pkg = resources.files("udbart") / "data" / "lexicons"
        kwargs = {}
        for f, name in _FILES.items():
            source = path / name
            text = source.read_text("utf-8") if source.exists() else (pkg / name).read_text("utf-8")
            kwargs[f] = read_word_list(text)
        return cls(**kwargs)
