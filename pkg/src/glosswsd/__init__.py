"""Context-rich disambiguation of textual definitions.

All glosses of a concept are pooled into one multilingual document, jointly
disambiguated over a semantic network, and refined with sense vectors into a
complete and a high-precision sense-annotated corpus.
"""
from .corpus_io import CorpusRelease, Version, read_corpus_xml, write_corpus_xml
from .disambiguate import DisambiguatedInstance, disambiguate_document, joint_disambiguate
from .enrich import build_enriched_document, group_corpus
from .inventory import Gloss, SenseInventory, Synset, load_inventory
from .model import PartOfSpeech, Resource, Source
from .pipeline import PipelineConfig, run_pipeline
from .preprocess import Preprocessor, load_stopwords
from .refine import refine_document
from .vectors import VectorStore, load_vectors

__version__ = "0.1.0"

__all__ = [
    "CorpusRelease", "DisambiguatedInstance", "Gloss", "PartOfSpeech", "PipelineConfig",
    "Preprocessor", "Resource", "SenseInventory", "Source", "Synset", "Version", "VectorStore",
    "build_enriched_document", "disambiguate_document", "group_corpus", "joint_disambiguate",
    "load_inventory", "load_stopwords", "load_vectors", "read_corpus_xml", "refine_document",
    "run_pipeline", "write_corpus_xml",
]
