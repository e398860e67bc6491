"""Context enrichment: one multilingual document per definiendum."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .errors import EmptyInputError, IntegrityError
from .inventory import Gloss, SenseInventory, SynsetId
from .preprocess import Mention, Preprocessor
from .tokenizer import Token


@dataclass(frozen=True)
class GlossSegment:
    gloss: Gloss
    token_start: int  # half-open range into EnrichedDocument.tokens
    token_end: int

    @property
    def language(self) -> str:
        return self.gloss.language


@dataclass(frozen=True)
class EnrichedDocument:
    definiendum: SynsetId
    segments: tuple[GlossSegment, ...]
    tokens: tuple[Token, ...]
    mentions: tuple[Mention, ...]

    def segment_of(self, mention: Mention) -> GlossSegment:
        return self.segments[mention.segment]

    def mentions_in(self, index: int) -> list[Mention]:
        return [m for m in self.mentions if m.segment == index]


def segment_order(gloss: Gloss):
    return (gloss.resource.value, gloss.language, gloss.gloss_id)


def build_enriched_document(definiendum: SynsetId, glosses: Sequence[Gloss],
                            inventory: SenseInventory,
                            preprocessor: Optional[Preprocessor] = None) -> EnrichedDocument:
    """Pool every gloss of ``definiendum`` into one document.

    Segments are kept as token ranges rather than concatenated strings, so mention
    offsets still point into the original gloss texts.
    """
    if not glosses:
        raise EmptyInputError(f"no glosses to enrich for {definiendum}")
    for gloss in glosses:
        if gloss.definiendum != definiendum:
            raise IntegrityError(
                f"gloss {gloss.gloss_id!r} defines {gloss.definiendum}, not {definiendum}"
            )
    preprocessor = preprocessor or Preprocessor(inventory)

    segments, tokens, mentions = [], [], []
    for index, gloss in enumerate(sorted(glosses, key=segment_order)):
        seg_tokens, seg_mentions = preprocessor.process(gloss.text, gloss.language)
        offset = len(tokens)
        tokens.extend(seg_tokens)
        segments.append(GlossSegment(gloss, offset, len(tokens)))
        mentions.extend(
            replace(m, start=m.start + offset, end=m.end + offset, segment=index)
            for m in seg_mentions
        )
    return EnrichedDocument(definiendum, tuple(segments), tuple(tokens), tuple(mentions))


def group_corpus(glosses: Iterable[Gloss]) -> list[tuple[SynsetId, list[Gloss]]]:
    """Group glosses by definiendum; groups sorted by synset id, input order kept inside."""
    groups: dict[SynsetId, list[Gloss]] = defaultdict(list)
    for gloss in glosses:
        groups[gloss.definiendum].append(gloss)
    return [(sid, groups[sid]) for sid in sorted(groups)]
