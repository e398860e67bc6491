"""Sense inventory and semantic network.

The inventory is read from a directory of tab-separated files:

``synsets.tsv``   id, pos, ``lemma@lang`` entries separated by ``|``
``glosses.tsv``   glossId, synsetId, resource, lang, text (text is the last field)
``rankings.tsv``  lemma, lang, pos, comma-separated synset ids, most common first
``edges.tsv``     src, dst, weight

``rankings.tsv`` and ``edges.tsv`` may be absent.  Blank lines and lines starting
with ``#`` are ignored.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

from .errors import IntegrityError, ParseError
from .model import CONTENT_POS, PartOfSpeech, Resource
from .tokenizer import lemma_key

SynsetId = str


@dataclass(frozen=True)
class Synset:
    id: SynsetId
    pos: PartOfSpeech
    lexicalizations: tuple[tuple[str, str], ...]  # (lemma, language)

    def __post_init__(self):
        if not self.id:
            raise IntegrityError("synset id must be non-empty")
        if not self.lexicalizations:
            raise IntegrityError(f"synset {self.id} has no lexicalizations")
        if self.pos not in CONTENT_POS:
            raise IntegrityError(f"synset {self.id} has non-content pos {self.pos}")


@dataclass(frozen=True)
class Gloss:
    gloss_id: str
    definiendum: SynsetId
    resource: Resource
    language: str
    text: str


@dataclass(frozen=True)
class SenseRanking:
    lemma: str
    language: str
    pos: PartOfSpeech
    ranked: tuple[SynsetId, ...]


class SemanticNetwork:
    """Weighted undirected graph over synsets; symmetric by construction."""

    def __init__(self, edges: Iterable[tuple[SynsetId, SynsetId, float]] = ()):
        self._adj: dict[SynsetId, dict[SynsetId, float]] = defaultdict(dict)
        for src, dst, weight in edges:
            self.add_edge(src, dst, weight)

    def add_edge(self, src: SynsetId, dst: SynsetId, weight: float) -> None:
        if src == dst:
            raise IntegrityError(f"self-loop on {src}")
        if not (weight > 0 and math.isfinite(weight)):
            raise IntegrityError(f"edge {src}-{dst} has non-positive weight {weight}")
        # the same pair listed twice keeps its heaviest weight
        weight = max(weight, self._adj[src].get(dst, 0.0))
        self._adj[src][dst] = weight
        self._adj[dst][src] = weight

    def neighbors(self, synset: SynsetId) -> Mapping[SynsetId, float]:
        return self._adj.get(synset, {})

    def weight(self, a: SynsetId, b: SynsetId) -> Optional[float]:
        return self._adj.get(a, {}).get(b)

    def nodes(self) -> list[SynsetId]:
        return sorted(node for node, nbrs in self._adj.items() if nbrs)

    def edges(self) -> Iterator[tuple[SynsetId, SynsetId, float]]:
        """Each undirected edge once, as (smaller id, larger id, weight)."""
        for src in sorted(self._adj):
            for dst in sorted(self._adj[src]):
                if src < dst:
                    yield src, dst, self._adj[src][dst]

    def __len__(self):
        return sum(1 for _ in self.edges())


class SenseInventory:
    """Synsets, glosses, most-common-sense rankings and the semantic network.

    Immutable after construction; lookups are safe from concurrent readers.
    """

    def __init__(
        self,
        synsets: Iterable[Synset],
        glosses: Iterable[Gloss] = (),
        rankings: Iterable[SenseRanking] = (),
        network: Optional[SemanticNetwork] = None,
    ):
        self.synsets: dict[SynsetId, Synset] = {}
        for synset in synsets:
            if synset.id in self.synsets:
                raise IntegrityError(f"duplicate synset id {synset.id}")
            self.synsets[synset.id] = synset
        if not self.synsets:
            raise IntegrityError("inventory has no synsets")

        self.glosses: tuple[Gloss, ...] = tuple(glosses)
        check_glosses(self.glosses, self.synsets)

        self.network = network if network is not None else SemanticNetwork()
        for src, dst, _ in self.network.edges():
            for end in (src, dst):
                if end not in self.synsets:
                    raise IntegrityError(f"edge {src}-{dst} references unknown synset {end}")

        senses: dict[tuple[str, str, PartOfSpeech], list[SynsetId]] = defaultdict(list)
        for synset in self.synsets.values():
            for lemma, lang in synset.lexicalizations:
                key = (lemma_key(lemma), lang, synset.pos)
                if synset.id not in senses[key]:
                    senses[key].append(synset.id)

        for ranking in rankings:
            key = (lemma_key(ranking.lemma), ranking.language, ranking.pos)
            for sid in ranking.ranked:
                if sid not in self.synsets:
                    raise IntegrityError(f"ranking for {ranking.lemma!r} references unknown synset {sid}")
                if self.synsets[sid].pos is not ranking.pos:
                    raise IntegrityError(
                        f"ranking for {ranking.lemma!r}/{ranking.pos.value} lists {sid} "
                        f"which is {self.synsets[sid].pos.value}"
                    )
            rest = [sid for sid in senses.get(key, []) if sid not in ranking.ranked]
            senses[key] = list(ranking.ranked) + rest

        self._senses = {key: tuple(ids) for key, ids in senses.items()}
        pos_index: dict[tuple[str, str], set[PartOfSpeech]] = defaultdict(set)
        for lemma, lang, pos in self._senses:
            pos_index[(lemma, lang)].add(pos)
        self._pos_index = {key: frozenset(value) for key, value in pos_index.items()}
        self.max_key_tokens = max(
            (len(lemma.split(" ")) for lemma, _, _ in self._senses), default=1
        )

    def __contains__(self, synset_id):
        return synset_id in self.synsets

    def __len__(self):
        return len(self.synsets)

    def candidate_senses(self, lemma: str, language: str, pos: PartOfSpeech) -> list[SynsetId]:
        """Candidates for a lexical key, most common sense first; ``[]`` on a miss."""
        return list(self._senses.get((lemma_key(lemma), language, PartOfSpeech(pos)), ()))

    def most_common_sense(self, lemma: str, language: str, pos: PartOfSpeech) -> Optional[SynsetId]:
        candidates = self._senses.get((lemma_key(lemma), language, PartOfSpeech(pos)), ())
        return candidates[0] if candidates else None

    def lookup_key(self, key: str, language: str, pos: PartOfSpeech) -> tuple[SynsetId, ...]:
        """Like :meth:`candidate_senses` but ``key`` is already normalized."""
        return self._senses.get((key, language, pos), ())

    def parts_of_speech(self, key: str, language: str) -> frozenset[PartOfSpeech]:
        """POS classes under which a normalized key is lexicalized."""
        return self._pos_index.get((key, language), frozenset())

    def glosses_of(self, synset_id: SynsetId) -> list[Gloss]:
        return [g for g in self.glosses if g.definiendum == synset_id]


def check_glosses(glosses: Iterable[Gloss], synsets: Optional[Mapping] = None) -> None:
    seen = set()
    for gloss in glosses:
        key = (gloss.resource, gloss.language, gloss.gloss_id)
        if key in seen:
            raise IntegrityError(
                f"duplicate gloss id {gloss.gloss_id!r} in {gloss.resource.value}/{gloss.language}"
            )
        seen.add(key)
        if synsets is not None and gloss.definiendum not in synsets:
            raise IntegrityError(
                f"gloss {gloss.gloss_id!r} references unknown synset {gloss.definiendum!r}"
            )


def _records(path: Path, min_fields: int, max_split: int = -1) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8", newline="") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t", max_split) if max_split >= 0 else line.split("\t")
            if len(fields) < min_fields:
                raise ParseError(
                    f"expected {min_fields} tab-separated fields, got {len(fields)}", path, lineno
                )
            yield lineno, fields


def _parse_pos(value: str, path: Path, lineno: int) -> PartOfSpeech:
    try:
        pos = PartOfSpeech.parse(value)
    except ValueError:
        raise ParseError(f"unknown part of speech {value!r}", path, lineno) from None
    if pos not in CONTENT_POS:
        raise ParseError(f"part of speech must be a content class, got {value!r}", path, lineno)
    return pos


def read_synsets(path) -> list[Synset]:
    path = Path(path)
    synsets = []
    for lineno, fields in _records(path, 3):
        sid, pos, lexs = fields[0].strip(), fields[1], fields[2]
        if not sid:
            raise ParseError("empty synset id", path, lineno)
        lexicalizations = []
        for entry in lexs.split("|"):
            entry = entry.strip()
            if not entry:
                continue
            lemma, sep, lang = entry.rpartition("@")
            if not sep or not lemma or not lang:
                raise ParseError(f"lexicalization {entry!r} is not lemma@lang", path, lineno)
            lexicalizations.append((lemma, lang))
        if not lexicalizations:
            raise ParseError(f"synset {sid} has no lexicalizations", path, lineno)
        synsets.append(Synset(sid, _parse_pos(pos, path, lineno), tuple(lexicalizations)))
    return synsets


def read_glosses(path) -> list[Gloss]:
    path = Path(path)
    glosses = []
    for lineno, fields in _records(path, 5, max_split=4):
        gloss_id, sid, resource, lang, text = fields
        if not gloss_id or not sid or not lang:
            raise ParseError("empty gloss id, synset id or language", path, lineno)
        if not text.strip():
            raise ParseError(f"gloss {gloss_id!r} has empty text", path, lineno)
        try:
            res = Resource.parse(resource)
        except ValueError as exc:
            raise ParseError(str(exc), path, lineno) from None
        glosses.append(Gloss(gloss_id, sid, res, lang, text))
    return glosses


def read_rankings(path) -> list[SenseRanking]:
    path = Path(path)
    rankings = []
    for lineno, fields in _records(path, 4):
        lemma, lang, pos, ranked = fields[:4]
        ids = tuple(s.strip() for s in ranked.split(",") if s.strip())
        if not ids:
            raise ParseError(f"empty ranking for {lemma!r}", path, lineno)
        if len(set(ids)) != len(ids):
            raise ParseError(f"duplicate synset in ranking for {lemma!r}", path, lineno)
        rankings.append(SenseRanking(lemma, lang, _parse_pos(pos, path, lineno), ids))
    return rankings


def read_edges(path) -> list[tuple[SynsetId, SynsetId, float]]:
    path = Path(path)
    edges = []
    for lineno, fields in _records(path, 3):
        src, dst = fields[0].strip(), fields[1].strip()
        try:
            weight = float(fields[2])
        except ValueError:
            raise ParseError(f"bad edge weight {fields[2]!r}", path, lineno) from None
        if not (weight > 0 and math.isfinite(weight)):
            raise ParseError(f"edge weight must be positive, got {weight}", path, lineno)
        if src == dst:
            raise ParseError(f"self-loop on {src}", path, lineno)
        edges.append((src, dst, weight))
    return edges


def load_inventory(path) -> SenseInventory:
    """Load an inventory directory (see module docstring for the file set)."""
    root = Path(path)
    for required in ("synsets.tsv", "glosses.tsv"):
        if not (root / required).is_file():
            raise FileNotFoundError(f"missing inventory file {root / required}")
    synsets = read_synsets(root / "synsets.tsv")
    glosses = read_glosses(root / "glosses.tsv")
    rankings = read_rankings(root / "rankings.tsv") if (root / "rankings.tsv").is_file() else []
    edges = read_edges(root / "edges.tsv") if (root / "edges.tsv").is_file() else []
    return SenseInventory(synsets, glosses, rankings, SemanticNetwork(edges))
