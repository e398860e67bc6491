"""End-to-end run: glosses in, two release trees and a statistics report out."""
from __future__ import annotations

import logging
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from .corpus_io import CorpusRelease, Version, build_release, write_corpus_xml
from .disambiguate import BF_THRESHOLD, DEFAULT_RADIUS, SignatureIndex, disambiguate_document
from .enrich import build_enriched_document, group_corpus
from .evalstats import StatsReport, compute_stats
from .inventory import Gloss, SenseInventory, load_inventory
from .preprocess import Preprocessor, load_stopwords
from .refine import COH_THRESHOLD, NASARI_THRESHOLD, refine_document
from .vectors import VectorStore, load_vectors

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    inventory_dir: Path
    vectors_path: Path
    out_dir: Path
    stopwords_dir: Optional[Path] = None  # defaults to inventory_dir
    bf_threshold: float = BF_THRESHOLD
    coh_threshold: float = COH_THRESHOLD
    nasari_threshold: float = NASARI_THRESHOLD
    signature_radius: int = DEFAULT_RADIUS
    workers: int = 1

    def __post_init__(self):
        for name in ("inventory_dir", "vectors_path", "out_dir", "stopwords_dir"):
            value = getattr(self, name)
            if value is not None:
                setattr(self, name, Path(value))
        self.bf_threshold = float(self.bf_threshold)
        self.coh_threshold = float(self.coh_threshold)
        self.nasari_threshold = float(self.nasari_threshold)
        self.signature_radius = int(self.signature_radius)
        self.workers = int(self.workers)
        for name in ("bf_threshold", "coh_threshold", "nasari_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {getattr(self, name)}")
        if self.signature_radius < 1:
            raise ValueError("signature_radius must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be a positive integer")

    @property
    def stopwords_path(self) -> Path:
        return self.stopwords_dir or self.inventory_dir

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def read_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment line."""
    known = set(PipelineConfig.keys())
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in known:
                raise ValueError(f"{path}:{lineno}: unknown or malformed setting {line!r}")
            values[key] = value.strip()
    return values


@dataclass
class RunResult:
    complete: CorpusRelease
    high_precision: CorpusRelease
    stats: StatsReport


class DocumentProcessor:
    """Everything needed to turn one definiendum's glosses into annotations."""

    def __init__(self, inventory: SenseInventory, vectors: VectorStore,
                 stopwords=None, config: Optional[PipelineConfig] = None, **overrides):
        self.inventory = inventory
        self.vectors = vectors
        self.preprocessor = Preprocessor(inventory, stopwords)
        settings = {
            "bf_threshold": BF_THRESHOLD, "coh_threshold": COH_THRESHOLD,
            "nasari_threshold": NASARI_THRESHOLD, "signature_radius": DEFAULT_RADIUS,
        }
        if config is not None:
            settings.update({k: getattr(config, k) for k in settings})
        settings.update(overrides)
        self.bf_threshold = settings["bf_threshold"]
        self.coh_threshold = settings["coh_threshold"]
        self.nasari_threshold = settings["nasari_threshold"]
        self.signatures = SignatureIndex(inventory.network, settings["signature_radius"], inventory.synsets)

    def disambiguate(self, definiendum, glosses):
        doc = build_enriched_document(definiendum, glosses, self.inventory, self.preprocessor)
        return disambiguate_document(doc, self.inventory, self.signatures.radius,
                                     self.bf_threshold, self.signatures)

    def __call__(self, group):
        definiendum, glosses = group
        instances = self.disambiguate(definiendum, glosses)
        return refine_document(instances, self.inventory, self.vectors,
                               self.bf_threshold, self.coh_threshold, self.nasari_threshold)


_worker: Optional[DocumentProcessor] = None


def _init_worker(processor: DocumentProcessor) -> None:
    global _worker
    _worker = processor


def _run_group(group):
    return _worker(group)


def process_corpus(processor: DocumentProcessor, glosses: list[Gloss], workers: int = 1):
    """Annotate every definiendum group; output order is independent of ``workers``."""
    groups = group_corpus(glosses)
    if workers == 1 or len(groups) <= 1:
        results = [processor(g) for g in groups]
    else:
        chunksize = max(1, len(groups) // (workers * 4))
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(processor,)) as pool:
            results = list(pool.map(_run_group, groups, chunksize=chunksize))
    complete = [d for c, _ in results for d in c]
    high_precision = [d for _, h in results for d in h]
    return complete, high_precision


def run_pipeline(config: PipelineConfig) -> RunResult:
    if not config.vectors_path.is_file():
        raise FileNotFoundError(f"vectors file not found: {config.vectors_path}")
    inventory = load_inventory(config.inventory_dir)
    vectors = load_vectors(config.vectors_path)
    stopwords = load_stopwords(config.stopwords_path)
    log.info("loaded %d synsets, %d glosses, %d vectors",
             len(inventory), len(inventory.glosses), len(vectors))

    processor = DocumentProcessor(inventory, vectors, stopwords, config)
    complete_instances, hp_instances = process_corpus(processor, list(inventory.glosses), config.workers)
    complete = build_release(Version.COMPLETE, inventory.glosses, complete_instances)
    high_precision = build_release(Version.HIGH_PRECISION, inventory.glosses, hp_instances)
    stats = compute_stats(complete, high_precision, inventory.glosses)

    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    for version in Version:
        # stale files from an earlier run would break byte-identical output
        shutil.rmtree(out / version.dirname, ignore_errors=True)
    write_corpus_xml(complete, out)
    write_corpus_xml(high_precision, out)
    (out / "stats.tsv").write_text(stats.to_tsv(), encoding="utf-8")
    (out / "stats.txt").write_text(stats.render(), encoding="utf-8")
    log.info("wrote %d + %d annotations to %s", stats.total_before, stats.total_after, out)
    return RunResult(complete, high_precision, stats)
