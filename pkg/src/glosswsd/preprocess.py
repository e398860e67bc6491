"""POS tagging and mention extraction over tokenized gloss text."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Protocol, Sequence

from .inventory import SenseInventory, SynsetId
from .model import CONTENT_POS, PartOfSpeech
from .tokenizer import Token, is_punct, normalize, tokenize

__all__ = [
    "Mention",
    "LexiconTagger",
    "Preprocessor",
    "Tagger",
    "extract_mentions",
    "load_stopwords",
    "pos_tag",
    "tokenize",
]

MAX_MWE_TOKENS = 5

# (suffix, pos) tried in order; only used when the lexicon does not decide
_SUFFIX_RULES = {
    "en": [
        ("ly", PartOfSpeech.ADV),
        ("ing", PartOfSpeech.VERB),
        ("ed", PartOfSpeech.VERB),
        ("ize", PartOfSpeech.VERB),
        ("ise", PartOfSpeech.VERB),
        ("ify", PartOfSpeech.VERB),
        ("ous", PartOfSpeech.ADJ),
        ("ful", PartOfSpeech.ADJ),
        ("ive", PartOfSpeech.ADJ),
        ("able", PartOfSpeech.ADJ),
        ("ible", PartOfSpeech.ADJ),
        ("less", PartOfSpeech.ADJ),
        ("ical", PartOfSpeech.ADJ),
    ],
    "es": [
        ("mente", PartOfSpeech.ADV),
        ("ando", PartOfSpeech.VERB),
        ("iendo", PartOfSpeech.VERB),
        ("oso", PartOfSpeech.ADJ),
        ("osa", PartOfSpeech.ADJ),
    ],
}
_MIN_STEM = 3


@dataclass(frozen=True)
class Mention:
    """A lexicon match over tokens ``start..end`` (inclusive).

    ``char_start``/``char_end`` index into the text of the gloss the mention came
    from; ``segment`` is the gloss position inside an enriched document.
    """

    start: int
    end: int
    lemma: str
    language: str
    pos: PartOfSpeech
    candidates: tuple[SynsetId, ...]
    char_start: int
    char_end: int
    anchor: str
    segment: int = 0


class Tagger(Protocol):
    def tag(self, tokens: Sequence[Token], language: str) -> list[Token]: ...


def load_stopwords(directory, languages: Optional[Sequence[str]] = None) -> dict[str, frozenset[str]]:
    """Read every ``stopwords.<lang>.txt`` in ``directory``."""
    directory = Path(directory)
    result = {}
    for path in sorted(directory.glob("stopwords.*.txt")):
        lang = path.name[len("stopwords."):-len(".txt")]
        if languages is not None and lang not in languages:
            continue
        with open(path, encoding="utf-8") as handle:
            words = {normalize(line.strip()) for line in handle if line.strip()}
        result[lang] = frozenset(words)
    return result


class LexiconTagger:
    """Default tagger: stopwords, then the inventory lexicon, then suffix rules.

    A token whose lemma is lexicalized under exactly one POS gets that POS.
    Otherwise suffix heuristics pick a class (restricted to the lexicon's
    classes when there are any), falling back to NOUN.
    """

    def __init__(self, inventory: Optional[SenseInventory] = None,
                 stopwords: Optional[Mapping[str, frozenset[str]]] = None):
        self.inventory = inventory
        self.stopwords = stopwords or {}

    def _guess(self, lemma: str, language: str) -> Optional[PartOfSpeech]:
        for suffix, pos in _SUFFIX_RULES.get(language, ()):
            if lemma.endswith(suffix) and len(lemma) - len(suffix) >= _MIN_STEM:
                return pos
        return None

    def tag_one(self, token: Token, language: str) -> PartOfSpeech:
        lemma = token.lemma
        if all(is_punct(ch) for ch in lemma) or lemma[0].isdigit() or lemma[-1].isdigit():
            return PartOfSpeech.OTHER
        if lemma in self.stopwords.get(language, ()):
            return PartOfSpeech.OTHER
        known = self.inventory.parts_of_speech(lemma, language) if self.inventory else frozenset()
        if len(known) == 1:
            return next(iter(known))
        guess = self._guess(lemma, language)
        if known:
            if guess in known:
                return guess
            return next(pos for pos in CONTENT_POS if pos in known)
        return guess or PartOfSpeech.NOUN

    def tag(self, tokens: Sequence[Token], language: str) -> list[Token]:
        return [tok.with_pos(self.tag_one(tok, language)) for tok in tokens]


def pos_tag(tokens: Sequence[Token], language: str,
            inventory: Optional[SenseInventory] = None,
            stopwords: Optional[Mapping[str, frozenset[str]]] = None,
            tagger: Optional[Tagger] = None) -> list[Token]:
    tagger = tagger or LexiconTagger(inventory, stopwords)
    return tagger.tag(tokens, language)


def _anchor(tokens: Sequence[Token], start: int, end: int, text: Optional[str]) -> str:
    if text is not None:
        return text[tokens[start].start:tokens[end].end]
    # without the source text, rebuild spacing from offsets
    parts = [tokens[start].surface]
    for prev, tok in zip(tokens[start:end], tokens[start + 1:end + 1]):
        parts.append(" " * (tok.start - prev.end) + tok.surface)
    return "".join(parts)


def extract_mentions(tokens: Sequence[Token], language: str, inventory: SenseInventory,
                     text: Optional[str] = None) -> list[Mention]:
    """Lexicon matches over POS-tagged tokens.

    Returns every maximal multiword match (2 to 5 tokens) plus every content-word
    single-token match, including single tokens nested inside a multiword match.
    Mentions are ordered by (start, end).
    """
    lemmas = [tok.lemma for tok in tokens]
    window = min(MAX_MWE_TOKENS, inventory.max_key_tokens)
    multi = []
    for i in range(len(tokens)):
        for length in range(min(window, len(tokens) - i), 1, -1):
            key = " ".join(lemmas[i:i + length])
            known = inventory.parts_of_speech(key, language)
            if known:
                multi.append((i, i + length - 1, key, known))
                break  # shorter spans from the same start are nested in this one
    maximal = [
        m for m in multi
        if not any(o is not m and o[0] <= m[0] and m[1] <= o[1] for o in multi)
    ]

    mentions = []
    for start, end, key, known in maximal:
        head = tokens[end].pos
        pos = head if head in known else next(p for p in CONTENT_POS if p in known)
        mentions.append(Mention(
            start, end, key, language, pos, inventory.lookup_key(key, language, pos),
            tokens[start].start, tokens[end].end, _anchor(tokens, start, end, text),
        ))
    for i, tok in enumerate(tokens):
        if not tok.pos.is_content:
            continue
        candidates = inventory.lookup_key(tok.lemma, language, tok.pos)
        if candidates:
            mentions.append(Mention(
                i, i, tok.lemma, language, tok.pos, candidates,
                tok.start, tok.end, _anchor(tokens, i, i, text),
            ))
    mentions.sort(key=lambda m: (m.start, m.end))
    return mentions


class Preprocessor:
    """Tokenize, tag and extract mentions for one gloss text."""

    def __init__(self, inventory: SenseInventory,
                 stopwords: Optional[Mapping[str, frozenset[str]]] = None,
                 tagger: Optional[Tagger] = None):
        self.inventory = inventory
        self.tagger = tagger or LexiconTagger(inventory, stopwords)

    def process(self, text: str, language: str) -> tuple[list[Token], list[Mention]]:
        tokens = self.tagger.tag(tokenize(text, language), language)
        return tokens, extract_mentions(tokens, language, self.inventory, text)
