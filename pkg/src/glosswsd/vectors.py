"""Sense vector store loaded from ``vectors.tsv``.

One vector per line: a synset id followed by whitespace-separated reals.  The
first line fixes the dimension.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import ParseError


class VectorStore(Mapping):
    """Read-only ``synset id -> vector`` mapping with a fixed dimension.

    Vectors are unit-normalized on insertion unless ``normalize=False``; cosine
    similarity is scale-invariant, so scores do not depend on this choice.
    """

    def __init__(self, vectors: Iterable[tuple[str, Iterable[float]]] = (),
                 normalize: bool = True, dim: Optional[int] = None):
        self.normalize = normalize
        self.dim = dim
        self._vectors: dict[str, np.ndarray] = {}
        for synset, values in vectors:
            self._add(synset, values)

    def _add(self, synset: str, values) -> None:
        vec = np.asarray(values, dtype=float)
        if vec.ndim != 1:
            raise ValueError(f"vector for {synset} is not one-dimensional")
        if self.dim is None:
            self.dim = vec.shape[0]
        if vec.shape[0] != self.dim:
            raise ValueError(f"vector for {synset} has dimension {vec.shape[0]}, expected {self.dim}")
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"vector for {synset} has non-finite values")
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError(f"zero vector for {synset}")
        if synset in self._vectors:
            raise ValueError(f"duplicate vector for {synset}")
        if self.normalize:
            vec = vec / norm
        vec.setflags(write=False)
        self._vectors[synset] = vec

    def __getitem__(self, synset):
        return self._vectors[synset]

    def __iter__(self):
        return iter(self._vectors)

    def __len__(self):
        return len(self._vectors)


def load_vectors(path, normalize: bool = True) -> VectorStore:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"vectors file not found: {path}")
    store = VectorStore(normalize=normalize)
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            fields = line.split()
            if not fields or fields[0].startswith("#"):
                continue
            if len(fields) < 2:
                raise ParseError(f"vector for {fields[0]} has no values", path, lineno)
            try:
                values = [float(x) for x in fields[1:]]
            except ValueError as exc:
                raise ParseError(str(exc), path, lineno) from None
            try:
                store._add(fields[0], values)
            except ValueError as exc:
                raise ParseError(str(exc), path, lineno) from None
    return store
