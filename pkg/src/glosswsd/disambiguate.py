"""Joint disambiguation of an enriched document over the semantic network.

Each mention contributes one vertex per candidate sense.  Two vertices of
different mentions are linked when the semantic signatures of their senses
intersect, weighted by the overlap mass.  A densest-subgraph pass strips the
weakest candidates until every mention keeps one; that assignment seeds a
node-budgeted branch-and-bound on the total edge weight, and a final sweep lets
each mention take the candidate with the most support from the others.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .enrich import EnrichedDocument
from .errors import UnknownSynsetError
from .inventory import SemanticNetwork, SenseInventory, SynsetId
from .model import PartOfSpeech, Resource, Source
from .preprocess import Mention

BF_THRESHOLD = 0.7
DEFAULT_RADIUS = 2
_TIE_EPS = 1e-12
_MAX_SWEEPS = 100
NODE_BUDGET = 100_000


@dataclass(frozen=True)
class DisambiguatedInstance:
    gloss_id: str
    resource: Resource
    language: str
    anchor: str
    start: int  # character offsets into the gloss text
    end: int
    lemma: str
    pos: PartOfSpeech
    sense: SynsetId
    bf_score: float
    coherence_score: float
    source: Source
    nasari_score: Optional[float] = None
    candidates: tuple[SynsetId, ...] = ()


def semantic_signature(synset: SynsetId, network: SemanticNetwork, radius: int = DEFAULT_RADIUS,
                       synsets: Optional[Mapping] = None) -> dict[SynsetId, float]:
    """Synsets reachable within ``radius`` hops, weighted by the best path product.

    The synset itself is always present with weight 1.  Paths are simple, so the
    result is exact even when edge weights exceed 1.
    """
    if synsets is not None and synset not in synsets:
        raise UnknownSynsetError(f"unknown synset {synset!r}")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    best: dict[SynsetId, float] = {}
    path = {synset}

    def walk(node, depth, product):
        if depth == radius:
            return
        for nbr, weight in network.neighbors(node).items():
            if nbr in path:
                continue
            value = product * weight
            if value > best.get(nbr, 0.0):
                best[nbr] = value
            path.add(nbr)
            walk(nbr, depth + 1, value)
            path.discard(nbr)

    walk(synset, 0, 1.0)
    best[synset] = 1.0
    return best


class SignatureIndex:
    """Memoized signatures for one network and radius."""

    def __init__(self, network: SemanticNetwork, radius: int = DEFAULT_RADIUS,
                 synsets: Optional[Mapping] = None):
        self.network = network
        self.radius = radius
        self.synsets = synsets
        self._cache: dict[SynsetId, dict[SynsetId, float]] = {}

    def __getitem__(self, synset: SynsetId) -> dict[SynsetId, float]:
        sig = self._cache.get(synset)
        if sig is None:
            sig = semantic_signature(synset, self.network, self.radius, self.synsets)
            self._cache[synset] = sig
        return sig

    def overlap(self, a: SynsetId, b: SynsetId) -> float:
        """Sum over shared synsets of the product of both signature weights."""
        sa, sb = self[a], self[b]
        if len(sb) < len(sa):
            sa, sb = sb, sa
        return sum(w * sb[x] for x, w in sa.items() if x in sb)

    def connected(self, a: SynsetId, b: SynsetId) -> bool:
        sa, sb = self[a], self[b]
        if len(sb) < len(sa):
            sa, sb = sb, sa
        return any(x in sb for x in sa)


@dataclass
class DisambiguationGraph:
    """Candidate vertices of all mentions and their pairwise weights.

    ``vertices[i]`` is ``(mention index, synset)``; ``weights`` is symmetric with
    zeros between candidates of the same mention.
    """

    candidates: list[tuple[SynsetId, ...]]
    vertices: list[tuple[int, SynsetId]]
    weights: np.ndarray
    offsets: list[int]  # first vertex index of each mention

    @classmethod
    def build(cls, candidates: Sequence[Sequence[SynsetId]], signatures: SignatureIndex):
        candidates = [tuple(c) for c in candidates]
        vertices, offsets = [], []
        for mi, cands in enumerate(candidates):
            offsets.append(len(vertices))
            vertices.extend((mi, sid) for sid in cands)
        n = len(vertices)
        weights = np.zeros((n, n))
        pair_cache: dict[tuple[SynsetId, SynsetId], float] = {}
        for i in range(n):
            mi, si = vertices[i]
            for j in range(i + 1, n):
                mj, sj = vertices[j]
                if mi == mj:
                    continue
                key = (si, sj) if si <= sj else (sj, si)
                w = pair_cache.get(key)
                if w is None:
                    w = pair_cache[key] = signatures.overlap(si, sj)
                weights[i, j] = weights[j, i] = w
        return cls(candidates, vertices, weights, offsets)

    def vertex(self, mention: int, choice: int) -> int:
        return self.offsets[mention] + choice

    def objective(self, assignment: Sequence[int]) -> float:
        """Total edge weight among the chosen vertices (one per mention)."""
        chosen = [self.vertex(m, c) for m, c in enumerate(assignment)]
        sub = self.weights[np.ix_(chosen, chosen)]
        return float(np.triu(sub, 1).sum())

    def support(self, mention: int, choice: int, assignment: Sequence[int]) -> float:
        v = self.vertex(mention, choice)
        return float(sum(
            self.weights[v, self.vertex(m, c)]
            for m, c in enumerate(assignment) if m != mention
        ))


def _prefer(candidate: tuple[float, SynsetId], incumbent: tuple[float, SynsetId]) -> bool:
    """Higher support wins; near-equal support goes to the smaller synset id."""
    (s1, id1), (s2, id2) = candidate, incumbent
    tol = _TIE_EPS * max(1.0, abs(s1), abs(s2))
    if s1 > s2 + tol:
        return True
    if s1 < s2 - tol:
        return False
    return id1 < id2


def densest_subgraph(graph: DisambiguationGraph) -> list[int]:
    """Greedy densest-subgraph reduction; returns the surviving choice per mention.

    Repeatedly drops the vertex with the lowest weighted degree (ties: smallest
    synset id, then mention index) among mentions still holding 2+ candidates.
    """
    n = len(graph.vertices)
    alive = np.ones(n, dtype=bool)
    remaining = [len(c) for c in graph.candidates]
    while any(r > 1 for r in remaining):
        degree = graph.weights[:, alive].sum(axis=1)
        victim = min(
            (i for i in range(n) if alive[i] and remaining[graph.vertices[i][0]] > 1),
            key=lambda i: (degree[i], graph.vertices[i][1], graph.vertices[i][0]),
        )
        alive[victim] = False
        remaining[graph.vertices[victim][0]] -= 1
    assignment = []
    for mi, cands in enumerate(graph.candidates):
        start = graph.offsets[mi]
        assignment.append(next(k for k in range(len(cands)) if alive[start + k]))
    return assignment


def maximize_support(graph: DisambiguationGraph, assignment: Sequence[int]) -> list[int]:
    """Let each mention move to its best-supported candidate until nothing changes."""
    assignment = list(assignment)
    for _ in range(_MAX_SWEEPS):
        changed = False
        for mi, cands in enumerate(graph.candidates):
            if len(cands) < 2:
                continue
            current = assignment[mi]
            best = (graph.support(mi, current, assignment), cands[current])
            best_k = current
            for k, sid in enumerate(cands):
                if k == current:
                    continue
                option = (graph.support(mi, k, assignment), sid)
                if _prefer(option, best):
                    best, best_k = option, k
            if best_k != current:
                assignment[mi] = best_k
                changed = True
        if not changed:
            break
    return assignment


def improve(graph: DisambiguationGraph, incumbent: Sequence[int],
            node_budget: int = NODE_BUDGET) -> list[int]:
    """Branch-and-bound over assignments, seeded with ``incumbent``.

    Only strictly better assignments replace the incumbent.  The search stops
    after ``node_budget`` nodes and returns the best assignment seen, so large
    documents degrade gracefully to the greedy answer.
    """
    m_count = len(graph.candidates)
    n = len(graph.vertices)
    if m_count < 2 or n == m_count:
        return list(incumbent)
    owner = np.array([mi for mi, _ in graph.vertices])
    starts = np.array(graph.offsets)
    # best edge from each vertex into each mention
    best_into = np.zeros((n, m_count))
    for mj in range(m_count):
        block = graph.weights[:, starts[mj]:starts[mj] + len(graph.candidates[mj])]
        best_into[:, mj] = block.max(axis=1)

    # most ambiguous, most connected mentions first
    strength = [best_into[owner == mi].sum() for mi in range(m_count)]
    order = sorted(range(m_count), key=lambda mi: (-len(graph.candidates[mi]), -strength[mi], mi))

    best_value = graph.objective(incumbent)
    best = list(incumbent)
    assign = [-1] * m_count
    unassigned = np.ones(m_count)
    link = np.zeros(n)  # weight from each vertex to the vertices fixed so far
    nodes = 0

    def bound() -> float:
        score = link + 0.5 * (best_into @ unassigned)
        total = 0.0
        for mi in range(m_count):
            if assign[mi] < 0:
                total += score[starts[mi]:starts[mi] + len(graph.candidates[mi])].max()
        return total

    def dfs(depth: int, partial: float) -> None:
        nonlocal best_value, best, nodes, link
        if depth == m_count:
            if partial > best_value + _TIE_EPS * max(1.0, abs(best_value)):
                best_value, best = partial, list(assign)
            return
        mi = order[depth]
        base = starts[mi]
        gains = link[base:base + len(graph.candidates[mi])]
        unassigned[mi] = 0.0
        for k in sorted(range(len(gains)), key=lambda k: -gains[k]):
            if nodes >= node_budget:
                break
            nodes += 1
            v = base + k
            assign[mi] = k
            link = link + graph.weights[:, v]
            value = partial + gains[k]
            if value + bound() > best_value + _TIE_EPS * max(1.0, abs(best_value)):
                dfs(depth + 1, value)
            link = link - graph.weights[:, v]
        assign[mi] = -1
        unassigned[mi] = 1.0

    dfs(0, 0.0)
    return best


def solve(graph: DisambiguationGraph) -> tuple[list[int], list[float]]:
    """Chosen candidate index and confidence for every mention."""
    assignment = maximize_support(graph, densest_subgraph(graph))
    assignment = maximize_support(graph, improve(graph, assignment))
    scores = []
    for mi, cands in enumerate(graph.candidates):
        if len(cands) == 1:
            scores.append(1.0)
            continue
        supports = [graph.support(mi, k, assignment) for k in range(len(cands))]
        total = sum(supports)
        scores.append(supports[assignment[mi]] / total if total > 0 else 0.0)
    return assignment, scores


def joint_disambiguate(doc: EnrichedDocument, inventory: SenseInventory,
                       radius: int = DEFAULT_RADIUS, bf_threshold: float = BF_THRESHOLD,
                       signatures: Optional[SignatureIndex] = None) -> list[DisambiguatedInstance]:
    """One instance per mention of ``doc``; coherence is left at 0.

    Mentions whose confidence falls below ``bf_threshold`` are backed off to the
    most common sense.
    """
    signatures = signatures or SignatureIndex(inventory.network, radius, inventory.synsets)
    mentions: Sequence[Mention] = doc.mentions
    if not mentions:
        return []
    graph = DisambiguationGraph.build([m.candidates for m in mentions], signatures)
    assignment, scores = solve(graph)

    instances = []
    for mention, choice, score in zip(mentions, assignment, scores):
        sense, source = mention.candidates[choice], Source.BABELFY
        if score < bf_threshold:
            sense, source = mention.candidates[0], Source.MCS
        gloss = doc.segment_of(mention).gloss
        instances.append(DisambiguatedInstance(
            gloss_id=gloss.gloss_id,
            resource=gloss.resource,
            language=gloss.language,
            anchor=mention.anchor,
            start=mention.char_start,
            end=mention.char_end,
            lemma=mention.lemma,
            pos=mention.pos,
            sense=sense,
            bf_score=score,
            coherence_score=0.0,
            source=source,
            candidates=mention.candidates,
        ))
    return instances


def coherence_scores(instances: Sequence[DisambiguatedInstance],
                     signatures: SignatureIndex) -> list[DisambiguatedInstance]:
    """Fraction of the other instances whose sense is connected to each instance's sense.

    A lone instance has nothing to be coherent with and scores 0.
    """
    n = len(instances)
    if n <= 1:
        return [replace(d, coherence_score=0.0) for d in instances]
    result = []
    for i, d in enumerate(instances):
        links = sum(
            1 for j, other in enumerate(instances)
            if j != i and signatures.connected(d.sense, other.sense)
        )
        result.append(replace(d, coherence_score=links / (n - 1)))
    return result


def disambiguate_document(doc: EnrichedDocument, inventory: SenseInventory,
                          radius: int = DEFAULT_RADIUS, bf_threshold: float = BF_THRESHOLD,
                          signatures: Optional[SignatureIndex] = None) -> list[DisambiguatedInstance]:
    signatures = signatures or SignatureIndex(inventory.network, radius, inventory.synsets)
    instances = joint_disambiguate(doc, inventory, radius, bf_threshold, signatures)
    return coherence_scores(instances, signatures)
