"""Corpus statistics, intrinsic evaluation and the sense-clustering harness."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .corpus_io import CorpusRelease, format_score
from .errors import EmptyInputError, IntegrityError, ParseError
from .inventory import Gloss
from .model import CONTENT_POS, Source

MERGE_THRESHOLD = 0.5


def _ratio(num: int, den: int) -> Optional[Fraction]:
    return Fraction(num, den) if den else None


@dataclass
class StatsReport:
    """Counts behind the corpus tables.

    Counters are keyed by tuples: ``gloss_counts[(resource, lang)]``,
    ``by_language[(lang, source)]`` and ``by_pos[(pos, source)]``.  Coverage
    values are ``None`` when nothing was annotated before refinement.
    """

    gloss_counts: Counter = field(default_factory=Counter)
    before_by_language: Counter = field(default_factory=Counter)
    after_by_language: Counter = field(default_factory=Counter)
    before_by_pos: Counter = field(default_factory=Counter)
    after_by_pos: Counter = field(default_factory=Counter)

    @property
    def n_glosses(self) -> int:
        return sum(self.gloss_counts.values())

    @property
    def total_before(self) -> int:
        return sum(self.before_by_language.values())

    @property
    def total_after(self) -> int:
        return sum(self.after_by_language.values())

    @property
    def annotations_per_gloss(self) -> Optional[Fraction]:
        return _ratio(self.total_before, self.n_glosses)

    @property
    def coverage(self) -> Optional[Fraction]:
        return _ratio(self.total_after, self.total_before)

    def coverage_by_pos(self) -> dict[str, Optional[Fraction]]:
        result = {}
        for pos in CONTENT_POS:
            before = sum(v for (p, _), v in self.before_by_pos.items() if p == pos.value)
            after = sum(v for (p, _), v in self.after_by_pos.items() if p == pos.value)
            result[pos.value] = _ratio(after, before)
        return result

    def languages(self) -> list[str]:
        return sorted({lang for _, lang in self.gloss_counts})

    def resources(self) -> list[str]:
        return sorted({res for res, _ in self.gloss_counts})

    def check(self) -> None:
        """Marginals must agree across the language and POS breakdowns."""
        for before, after in ((self.before_by_language, self.after_by_language),
                              (self.before_by_pos, self.after_by_pos)):
            if sum(before.values()) != self.total_before or sum(after.values()) != self.total_after:
                raise IntegrityError("annotation totals disagree between breakdowns")
        if self.total_after > self.total_before:
            raise IntegrityError("refinement produced more annotations than it received")

    def rows(self) -> list[tuple[str, str, str, str]]:
        """Flat (table, row, column, value) records, the TSV payload."""
        out = []
        for (res, lang), n in sorted(self.gloss_counts.items()):
            out.append(("glosses", res, lang, str(n)))
        for name, counter in (("before_by_language", self.before_by_language),
                              ("after_by_language", self.after_by_language),
                              ("before_by_pos", self.before_by_pos),
                              ("after_by_pos", self.after_by_pos)):
            for (row, col), n in sorted(counter.items()):
                out.append((name, row, col, str(n)))
        out.append(("summary", "glosses", "", str(self.n_glosses)))
        out.append(("summary", "annotations_before", "", str(self.total_before)))
        out.append(("summary", "annotations_after", "", str(self.total_after)))
        out.append(("summary", "annotations_per_gloss", "", _fmt_ratio(self.annotations_per_gloss)))
        out.append(("coverage", "ALL", "", _fmt_ratio(self.coverage)))
        for pos, value in self.coverage_by_pos().items():
            out.append(("coverage", pos, "", _fmt_ratio(value)))
        return out

    def to_tsv(self) -> str:
        lines = ["table\trow\tcolumn\tvalue"]
        lines.extend("\t".join(r) for r in self.rows())
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        langs = self.languages()
        parts = [
            "Glosses by resource and language",
            _table(["", "All"] + langs, [
                [res, sum(self.gloss_counts[(res, l)] for l in langs)]
                + [self.gloss_counts[(res, l)] for l in langs]
                for res in self.resources()
            ] + [["Total", self.n_glosses] + [sum(self.gloss_counts[(r, l)] for r in self.resources()) for l in langs]]),
            "",
            "Annotations by language",
            _source_table(langs, self.before_by_language, self.after_by_language),
            "",
            "Annotations by part of speech",
            _source_table([p.value for p in CONTENT_POS], self.before_by_pos, self.after_by_pos),
            "",
            f"Annotations per gloss: {_fmt_ratio(self.annotations_per_gloss)}",
            f"Coverage after refinement: {_fmt_ratio(self.coverage)}",
        ]
        parts.extend(f"  {pos}: {_fmt_ratio(v)}" for pos, v in self.coverage_by_pos().items())
        return "\n".join(parts) + "\n"


def _fmt_ratio(value: Optional[Fraction]) -> str:
    return "undefined" if value is None else format_score(float(value))


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for k, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))))
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _source_table(columns: Sequence[str], before: Counter, after: Counter) -> str:
    rows = []
    for stage, counter, sources in (("before", before, (Source.BABELFY, Source.MCS)),
                                    ("after", after, (Source.BABELFY, Source.NASARI))):
        for src in sources:
            vals = [counter[(c, src.value)] for c in columns]
            rows.append([f"{stage} {src.value}", sum(vals)] + vals)
        vals = [sum(counter[(c, s.value)] for s in Source) for c in columns]
        rows.append([f"{stage} Total", sum(vals)] + vals)
    return _table(["", "All"] + list(columns), rows)


def compute_stats(complete: CorpusRelease, high_precision: CorpusRelease,
                  glosses: Optional[Iterable[Gloss]] = None) -> StatsReport:
    """Tabulate both release versions of one run."""
    keys = [g.key for g in complete.glosses]
    if sorted(keys) != sorted(g.key for g in high_precision.glosses):
        raise IntegrityError("complete and high-precision releases cover different glosses")
    if glosses is not None:
        expected = sorted((g.resource.value, g.language, g.gloss_id) for g in glosses)
        if expected != sorted(keys):
            raise IntegrityError("releases do not cover the given gloss corpus")

    report = StatsReport()
    for g in complete.glosses:
        report.gloss_counts[(g.resource.value, g.language)] += 1
    for release, by_lang, by_pos in ((complete, report.before_by_language, report.before_by_pos),
                                     (high_precision, report.after_by_language, report.after_by_pos)):
        for a in release.annotations():
            by_lang[(a.language, a.source.value)] += 1
            by_pos[(a.pos.value, a.source.value)] += 1
    report.check()
    return report


@dataclass(frozen=True)
class GoldAnnotation:
    gloss_id: str
    start: int
    end: int
    sense: str


@dataclass(frozen=True)
class EvalResult:
    precision: float
    coverage: float
    correct: int
    attempted: int
    gold: int


def read_gold(path) -> list[GoldAnnotation]:
    path = Path(path)
    gold = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise ParseError(f"expected 4 fields, got {len(fields)}", path, lineno)
            try:
                start, end = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("offsets must be integers", path, lineno) from None
            if not 0 <= start < end:
                raise ParseError(f"bad span {start}:{end}", path, lineno)
            gold.append(GoldAnnotation(fields[0], start, end, fields[3].strip()))
    return gold


def intrinsic_eval(predicted: Iterable, gold: Sequence[GoldAnnotation],
                   inventory=None) -> EvalResult:
    """Precision over gold items that received a prediction; coverage over all gold items.

    Predictions are matched to gold by (gloss id, start, end); predictions at
    spans with no gold item are not judged.
    """
    if not gold:
        raise EmptyInputError("gold standard is empty")
    if inventory is not None:
        for g in gold:
            if g.sense not in inventory:
                raise IntegrityError(f"gold sense {g.sense!r} is not in the inventory")
    by_span = {}
    for p in predicted:
        by_span.setdefault((p.gloss_id, p.start, p.end), p.sense)
    attempted = correct = 0
    for g in gold:
        sense = by_span.get((g.gloss_id, g.start, g.end))
        if sense is None:
            continue
        attempted += 1
        correct += sense == g.sense
    precision = correct / attempted if attempted else 0.0
    return EvalResult(precision, attempted / len(gold), correct, attempted, len(gold))


def _ranks(vec: np.ndarray) -> dict[int, int]:
    nz = [i for i in range(vec.shape[0]) if vec[i] != 0]
    nz.sort(key=lambda i: (-vec[i], i))
    return {dim: rank for rank, dim in enumerate(nz, 1)}


def weighted_overlap(a, b) -> float:
    """Square-rooted Weighted Overlap of two vectors read as ranked feature lists.

    Only dimensions that are non-zero in both vectors count; each contributes
    the inverse of its summed ranks, normalized by the best achievable value
    for that many shared dimensions.
    """
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    ra, rb = _ranks(a), _ranks(b)
    shared = [dim for dim in ra if dim in rb]
    if not shared:
        return 0.0
    num = sum(1.0 / (ra[q] + rb[q]) for q in shared)
    den = sum(1.0 / (2 * i) for i in range(1, len(shared) + 1))
    return math.sqrt(num / den)


@dataclass(frozen=True)
class ClusterPair:
    item_a: str
    item_b: str
    gold_merge: bool


@dataclass(frozen=True)
class ClusteringResult:
    accuracy: float
    f1: float
    tp: int
    fp: int
    tn: int
    fn: int
    unjudgeable: int


def read_pairs(path) -> list[ClusterPair]:
    path = Path(path)
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[2].strip().lower() not in ("merge", "split"):
                raise ParseError("expected idA, idB, merge|split", path, lineno)
            pairs.append(ClusterPair(fields[0], fields[1], fields[2].strip().lower() == "merge"))
    return pairs


def sense_clustering_eval(pairs: Sequence[ClusterPair], vectors: Mapping,
                          threshold: float = MERGE_THRESHOLD) -> ClusteringResult:
    """Merge a pair iff its Weighted Overlap exceeds ``threshold``.

    Pairs with a missing vector are predicted as not merged.
    """
    if not pairs:
        raise EmptyInputError("no pairs to evaluate")
    tp = fp = tn = fn = unjudgeable = 0
    for pair in pairs:
        if pair.item_a in vectors and pair.item_b in vectors:
            merge = weighted_overlap(vectors[pair.item_a], vectors[pair.item_b]) > threshold
        else:
            unjudgeable += 1
            merge = False
        if merge and pair.gold_merge:
            tp += 1
        elif merge:
            fp += 1
        elif pair.gold_merge:
            fn += 1
        else:
            tn += 1
    accuracy = (tp + tn) / len(pairs)
    f1 = 2 * tp / (2 * tp + fp + fn) if tp else 0.0
    return ClusteringResult(accuracy, f1, tp, fp, tn, fn, unjudgeable)
