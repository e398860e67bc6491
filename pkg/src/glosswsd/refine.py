"""Similarity-based refinement of low-confidence annotations.

Instances that fail either confidence threshold form the low-confidence set.
The senses of the remaining instances define a centroid in vector space; each
low-confidence noun is re-tagged with whichever of its lemma's candidate senses
lies closest to that centroid, provided the cosine clears the threshold.
Everything else in the low-confidence set is dropped from the high-precision
output.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .disambiguate import BF_THRESHOLD, DisambiguatedInstance
from .inventory import SenseInventory, SynsetId
from .model import PartOfSpeech, Source

COH_THRESHOLD = 0.125
NASARI_THRESHOLD = 0.75


class Decision(str, enum.Enum):
    KEPT_BABELFY = "KEPT_BABELFY"
    RETAGGED_NASARI = "RETAGGED_NASARI"
    DISCARDED = "DISCARDED"


@dataclass(frozen=True)
class RefinementOutcome:
    instance: DisambiguatedInstance
    decision: Decision
    nasari_score: Optional[float] = None


def is_low_confidence(d: DisambiguatedInstance, bf_threshold: float = BF_THRESHOLD,
                      coh_threshold: float = COH_THRESHOLD) -> bool:
    return d.bf_score < bf_threshold or d.coherence_score < coh_threshold


def low_confidence_set(instances: Sequence[DisambiguatedInstance],
                       bf_threshold: float = BF_THRESHOLD,
                       coh_threshold: float = COH_THRESHOLD):
    """Split into (confident, low-confidence), keeping input order in both."""
    kept, low = [], []
    for d in instances:
        (low if is_low_confidence(d, bf_threshold, coh_threshold) else kept).append(d)
    return kept, low


def centroid(instances: Sequence[DisambiguatedInstance],
             vectors: Mapping[SynsetId, np.ndarray]) -> Optional[np.ndarray]:
    """Mean vector of the instances' senses; ``None`` when none has a vector."""
    found = [vectors[d.sense] for d in instances if d.sense in vectors]
    if not found:
        return None
    return np.mean(found, axis=0)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("cosine undefined for a zero vector")
    return float(np.dot(a, b) / (na * nb))


def nasari_score(candidate: SynsetId, mu: np.ndarray,
                 vectors: Mapping[SynsetId, np.ndarray]) -> Optional[float]:
    """Cosine between the centroid and the candidate's vector; ``None`` if it has none."""
    vec = vectors.get(candidate)
    if vec is None:
        return None
    return cosine(mu, vec)


def refine_instance(instance: DisambiguatedInstance, inventory: SenseInventory,
                    vectors: Mapping[SynsetId, np.ndarray], mu: np.ndarray,
                    nasari_threshold: float = NASARI_THRESHOLD) -> RefinementOutcome:
    if instance.pos is not PartOfSpeech.NOUN:
        return RefinementOutcome(instance, Decision.DISCARDED)
    scored = []
    for sid in inventory.candidate_senses(instance.lemma, instance.language, PartOfSpeech.NOUN):
        score = nasari_score(sid, mu, vectors)
        if score is not None:
            scored.append((score, sid))
    if not scored:
        return RefinementOutcome(instance, Decision.DISCARDED)
    score, best = min(scored, key=lambda item: (-item[0], item[1]))
    if score < nasari_threshold:
        return RefinementOutcome(instance, Decision.DISCARDED, score)
    retagged = replace(instance, sense=best, source=Source.NASARI, nasari_score=score)
    return RefinementOutcome(retagged, Decision.RETAGGED_NASARI, score)


def refinement_outcomes(instances: Sequence[DisambiguatedInstance], inventory: SenseInventory,
                        vectors: Mapping[SynsetId, np.ndarray],
                        bf_threshold: float = BF_THRESHOLD,
                        coh_threshold: float = COH_THRESHOLD,
                        nasari_threshold: float = NASARI_THRESHOLD) -> list[RefinementOutcome]:
    """One outcome per input instance, in input order."""
    kept, _ = low_confidence_set(instances, bf_threshold, coh_threshold)
    mu = centroid(kept, vectors)
    if mu is not None and not np.any(mu):
        mu = None  # opposite vectors cancelled out; no direction to compare against
    outcomes = []
    for d in instances:
        if not is_low_confidence(d, bf_threshold, coh_threshold):
            outcomes.append(RefinementOutcome(d, Decision.KEPT_BABELFY))
        elif mu is None:
            outcomes.append(RefinementOutcome(d, Decision.DISCARDED))
        else:
            outcomes.append(refine_instance(d, inventory, vectors, mu, nasari_threshold))
    return outcomes


def refine_document(instances: Sequence[DisambiguatedInstance], inventory: SenseInventory,
                    vectors: Mapping[SynsetId, np.ndarray],
                    bf_threshold: float = BF_THRESHOLD,
                    coh_threshold: float = COH_THRESHOLD,
                    nasari_threshold: float = NASARI_THRESHOLD):
    """Return ``(complete, high_precision)`` annotation lists for one document."""
    outcomes = refinement_outcomes(instances, inventory, vectors,
                                   bf_threshold, coh_threshold, nasari_threshold)
    high_precision = [o.instance for o in outcomes if o.decision is not Decision.DISCARDED]
    return list(instances), high_precision
