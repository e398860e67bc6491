"""Rule-based tokenizer.

Rules, applied to every whitespace-delimited chunk:

* a chunk that is a (possibly signed) number such as ``3.14`` or ``1,000`` stays whole;
* leading and trailing punctuation characters become one token each;
* internal hyphens split the remaining core and are kept as tokens.

Everything else (apostrophes, internal dots) stays inside the word.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, replace

from .errors import EmptyInputError
from .model import PartOfSpeech

_CHUNK = re.compile(r"\S+")
_NUMBER = re.compile(r"[+-]?\d+(?:[.,]\d+)*")
_HYPHENS = "-‐‑"
_HYPHEN_SPLIT = re.compile(f"([{_HYPHENS}])")


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    lemma: str
    pos: PartOfSpeech = PartOfSpeech.OTHER

    def with_pos(self, pos: PartOfSpeech) -> "Token":
        return replace(self, pos=pos)


def normalize(text: str) -> str:
    """NFC + lowercasing; the only lemmatization we do."""
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).lower())


def is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _make(text: str, start: int, end: int) -> Token:
    surface = text[start:end]
    return Token(surface, start, end, normalize(surface))


def _split_chunk(text: str, start: int, end: int) -> list[Token]:
    chunk = text[start:end]
    if _NUMBER.fullmatch(chunk):
        return [_make(text, start, end)]

    lead = 0
    while lead < len(chunk) and is_punct(chunk[lead]):
        lead += 1
    trail = 0
    while trail < len(chunk) - lead and is_punct(chunk[len(chunk) - 1 - trail]):
        trail += 1
    core_end = len(chunk) - trail
    # a sign glued to a number belongs to the number
    if lead and chunk[lead - 1] in "+-" and _NUMBER.fullmatch(chunk[lead - 1:core_end]):
        lead -= 1

    tokens = [_make(text, start + i, start + i + 1) for i in range(lead)]
    core = chunk[lead:core_end]
    if core:
        if _NUMBER.fullmatch(core):
            tokens.append(_make(text, start + lead, start + core_end))
        else:
            offset = start + lead
            for piece in _HYPHEN_SPLIT.split(core):
                if piece:
                    tokens.append(_make(text, offset, offset + len(piece)))
                    offset += len(piece)
    tokens.extend(_make(text, start + i, start + i + 1) for i in range(core_end, len(chunk)))
    return tokens


def tokenize(text: str, language: str = "en") -> list[Token]:
    """Split ``text`` into ordered, non-overlapping tokens with character offsets.

    ``language`` is accepted for interface symmetry; the rules are language-independent.
    """
    if not text or not text.strip():
        raise EmptyInputError("cannot tokenize empty text")
    tokens: list[Token] = []
    for match in _CHUNK.finditer(text):
        tokens.extend(_split_chunk(text, match.start(), match.end()))
    return tokens


def lemma_key(lemma: str) -> str:
    """Canonical lookup key for a (possibly multiword) lemma.

    Lexicon entries and running text go through the same tokenizer so that
    ``chess_piece``, ``Chess piece`` and the two tokens ``chess`` ``piece`` agree.
    """
    text = lemma.replace("_", " ")
    if not text.strip():
        return ""
    return " ".join(tok.lemma for tok in tokenize(text))
