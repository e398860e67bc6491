"""Enumerations shared by every stage."""
from __future__ import annotations

import enum


class PartOfSpeech(str, enum.Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    OTHER = "OTHER"

    @classmethod
    def parse(cls, value: str) -> "PartOfSpeech":
        key = value.strip().upper()
        key = _POS_ALIASES.get(key, key)
        return cls(key)

    @property
    def is_content(self) -> bool:
        return self is not PartOfSpeech.OTHER


CONTENT_POS = (PartOfSpeech.NOUN, PartOfSpeech.VERB, PartOfSpeech.ADJ, PartOfSpeech.ADV)

_POS_ALIASES = {
    "N": "NOUN",
    "V": "VERB",
    "A": "ADJ",
    "S": "ADJ",
    "R": "ADV",
    "ADJECTIVE": "ADJ",
    "ADVERB": "ADV",
}


class Resource(str, enum.Enum):
    WORDNET = "WordNet"
    WIKIPEDIA = "Wikipedia"
    WIKTIONARY = "Wiktionary"
    WIKIDATA = "Wikidata"
    OMEGAWIKI = "OmegaWiki"

    @classmethod
    def parse(cls, value: str) -> "Resource":
        lowered = value.strip().lower()
        for member in cls:
            if member.value.lower() == lowered:
                return member
        raise ValueError(f"unknown resource {value!r}")


class Source(str, enum.Enum):
    """Which stage produced an annotation's sense."""

    BABELFY = "BABELFY"
    MCS = "MCS"
    NASARI = "NASARI"
