"""Reading and writing the sense-annotated corpus.

A release is split by resource and then by language, one XML file per pair,
under ``<outdir>/<version>/<resource>/<resource>.<lang>.xml``::

    <?xml version="1.0" encoding="UTF-8"?>
    <corpus version="COMPLETE" resource="WordNet" language="en">
      <definition id="castling.n.01">Interchanging the positions of the king and a rook.
        <annotation source="MCS" anchor="king" start="35" end="39" pos="NOUN" bfScore="0.5000" coherenceScore="0.1429">king_monarch</annotation>
      </definition>
    </corpus>

The definition text is written verbatim; the newline and indentation that
precede its first annotation are layout and are removed again on reading.
``start``/``end`` (character offsets of the anchor) and ``pos`` are additions
to the released format, needed to tell overlapping anchors apart and to
compute per-POS statistics.
"""
from __future__ import annotations

import enum
import math
import xml.etree.ElementTree as ET
from collections import defaultdict
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .disambiguate import DisambiguatedInstance
from .errors import IntegrityError, ParseError
from .inventory import Gloss, check_glosses, read_glosses
from .model import PartOfSpeech, Resource, Source
from .tokenizer import lemma_key

_INDENT = "  "
_TEXT_SUFFIX = "\n" + _INDENT * 2
_QUANTUM = Decimal("0.0001")


class Version(str, enum.Enum):
    COMPLETE = "COMPLETE"
    HIGH_PRECISION = "HIGH_PRECISION"

    @property
    def dirname(self) -> str:
        return self.value.lower()

    @property
    def forbidden_source(self) -> Source:
        return Source.NASARI if self is Version.COMPLETE else Source.MCS


@dataclass(frozen=True)
class AnnotatedGloss:
    gloss_id: str
    resource: Resource
    language: str
    text: str
    annotations: tuple[DisambiguatedInstance, ...] = ()

    @property
    def key(self):
        return (self.resource.value, self.language, self.gloss_id)


@dataclass(frozen=True)
class CorpusRelease:
    version: Version
    glosses: tuple[AnnotatedGloss, ...]

    def files(self) -> dict[tuple[Resource, str], list[AnnotatedGloss]]:
        """Glosses partitioned by (resource, language), each list sorted by gloss id."""
        parts: dict[tuple[Resource, str], list[AnnotatedGloss]] = defaultdict(list)
        for g in self.glosses:
            parts[(g.resource, g.language)].append(g)
        return {
            key: sorted(parts[key], key=lambda g: g.gloss_id)
            for key in sorted(parts, key=lambda k: (k[0].value, k[1]))
        }

    def annotations(self) -> list[DisambiguatedInstance]:
        return [a for g in self.glosses for a in g.annotations]


def annotation_order(d: DisambiguatedInstance):
    return (d.start, d.end, d.sense, d.source.value)


def build_release(version: Version, glosses: Iterable[Gloss],
                  instances: Iterable[DisambiguatedInstance]) -> CorpusRelease:
    """Attach instances to their glosses; glosses without annotations are kept."""
    by_gloss: dict[tuple, list[DisambiguatedInstance]] = defaultdict(list)
    for d in instances:
        by_gloss[(d.resource, d.language, d.gloss_id)].append(d)
    entries = []
    for g in glosses:
        anns = sorted(by_gloss.pop((g.resource, g.language, g.gloss_id), []), key=annotation_order)
        entries.append(AnnotatedGloss(g.gloss_id, g.resource, g.language, g.text, tuple(anns)))
    if by_gloss:
        missing = next(iter(by_gloss))
        raise IntegrityError(f"annotations for unknown gloss {missing[2]!r} ({missing[0].value}/{missing[1]})")
    entries.sort(key=lambda e: e.key)
    release = CorpusRelease(version, tuple(entries))
    validate_release(release)
    return release


def validate_release(release: CorpusRelease) -> None:
    seen = set()
    forbidden = release.version.forbidden_source
    for g in release.glosses:
        if g.key in seen:
            raise IntegrityError(f"duplicate gloss {g.gloss_id!r} in {g.resource.value}/{g.language}")
        seen.add(g.key)
        for a in g.annotations:
            where = f"gloss {g.gloss_id!r}, anchor {a.anchor!r}"
            if not (0 <= a.start < a.end <= len(g.text)) or g.text[a.start:a.end] != a.anchor:
                raise IntegrityError(f"{where}: anchor does not match the definition text at {a.start}:{a.end}")
            if a.source is forbidden:
                raise IntegrityError(f"{where}: {a.source.value} annotation in a {release.version.value} release")
            if (a.source is Source.NASARI) != (a.nasari_score is not None):
                raise IntegrityError(f"{where}: nasariScore must be present exactly for NASARI annotations")
            for name, value in (("bfScore", a.bf_score), ("coherenceScore", a.coherence_score),
                                ("nasariScore", a.nasari_score)):
                if value is not None and not math.isfinite(value):
                    raise IntegrityError(f"{where}: {name} is not finite")
            if (a.gloss_id, a.resource, a.language) != (g.gloss_id, g.resource, g.language):
                raise IntegrityError(f"{where}: annotation filed under the wrong gloss")


def format_score(value: float) -> str:
    """Four decimals, round half to even, from the shortest repr of ``value``."""
    return str(Decimal(repr(float(value))).quantize(_QUANTUM, rounding=ROUND_HALF_EVEN))


def _escape_text(s: str) -> str:
    return (s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace("\r", "&#13;"))


def _escape_attr(s: str) -> str:
    return (_escape_text(s).replace('"', "&quot;")
            .replace("\n", "&#10;").replace("\t", "&#9;"))


def _annotation_xml(a: DisambiguatedInstance) -> str:
    attrs = [
        ("source", a.source.value),
        ("anchor", a.anchor),
        ("start", str(a.start)),
        ("end", str(a.end)),
        ("pos", a.pos.value),
        ("bfScore", format_score(a.bf_score)),
        ("coherenceScore", format_score(a.coherence_score)),
    ]
    if a.nasari_score is not None:
        attrs.append(("nasariScore", format_score(a.nasari_score)))
    rendered = " ".join(f'{k}="{_escape_attr(v)}"' for k, v in attrs)
    return f"<annotation {rendered}>{_escape_text(a.sense)}</annotation>"


def render_file(version: Version, resource: Resource, language: str,
                glosses: Sequence[AnnotatedGloss]) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<corpus version="{version.value}" resource="{_escape_attr(resource.value)}" '
        f'language="{_escape_attr(language)}">',
    ]
    for g in glosses:
        head = f'{_INDENT}<definition id="{_escape_attr(g.gloss_id)}">{_escape_text(g.text)}'
        if not g.annotations:
            lines.append(head + "</definition>")
            continue
        lines.append(head)
        for a in sorted(g.annotations, key=annotation_order):
            lines.append(_INDENT * 2 + _annotation_xml(a))
        lines.append(_INDENT + "</definition>")
    lines.append("</corpus>")
    return "\n".join(lines) + "\n"


def release_path(out_dir, version: Version, resource: Resource, language: str) -> Path:
    return Path(out_dir) / version.dirname / resource.value / f"{resource.value}.{language}.xml"


def write_corpus_xml(release: CorpusRelease, out_dir) -> list[Path]:
    """Write one XML file per (resource, language); returns the paths written."""
    validate_release(release)
    root = Path(out_dir) / release.version.dirname
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for (resource, language), glosses in release.files().items():
        path = release_path(out_dir, release.version, resource, language)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(render_file(release.version, resource, language, glosses).encode("utf-8"))
        written.append(path)
    return written


_ANNOTATION_ATTRS = {"source", "anchor", "start", "end", "pos", "bfScore", "coherenceScore", "nasariScore"}


def _attr(elem: ET.Element, name: str, path: Path) -> str:
    value = elem.get(name)
    if value is None:
        raise ParseError(f"<{elem.tag}> is missing attribute {name!r}", path)
    return value


def _float_attr(elem: ET.Element, name: str, path: Path) -> float:
    raw = _attr(elem, name, path)
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"<{elem.tag}> attribute {name!r} is not a number: {raw!r}", path) from None
    if not math.isfinite(value):
        raise ParseError(f"<{elem.tag}> attribute {name!r} is not finite", path)
    return value


def _int_attr(elem: ET.Element, name: str, path: Path) -> int:
    raw = _attr(elem, name, path)
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"<{elem.tag}> attribute {name!r} is not an integer: {raw!r}", path) from None


def _read_file(path: Path) -> tuple[Version, list[AnnotatedGloss]]:
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}", path) from None
    if root.tag != "corpus":
        raise ParseError(f"root element must be <corpus>, got <{root.tag}>", path)
    try:
        version = Version(_attr(root, "version", path))
    except ValueError:
        raise ParseError(f"<corpus> attribute 'version' has unknown value {root.get('version')!r}", path) from None
    try:
        resource = Resource.parse(_attr(root, "resource", path))
    except ValueError:
        raise ParseError(f"<corpus> attribute 'resource' has unknown value {root.get('resource')!r}", path) from None
    language = _attr(root, "language", path)

    glosses = []
    for definition in root:
        if definition.tag != "definition":
            raise ParseError(f"unexpected element <{definition.tag}> in <corpus>", path)
        gloss_id = _attr(definition, "id", path)
        text = definition.text or ""
        children = list(definition)
        if children:
            if not text.endswith(_TEXT_SUFFIX):
                raise ParseError(f"<definition id={gloss_id!r}> text is not followed by the expected layout", path)
            text = text[:-len(_TEXT_SUFFIX)]
        if not text:
            raise ParseError(f"<definition id={gloss_id!r}> has no text", path)
        annotations = []
        for ann in children:
            if ann.tag != "annotation":
                raise ParseError(f"unexpected element <{ann.tag}> in <definition>", path)
            unknown = set(ann.attrib) - _ANNOTATION_ATTRS
            if unknown:
                raise ParseError(f"<annotation> has unknown attribute {sorted(unknown)[0]!r}", path)
            if len(ann):
                raise ParseError("<annotation> must not contain elements", path)
            try:
                source = Source(_attr(ann, "source", path))
            except ValueError:
                raise ParseError(f"<annotation> attribute 'source' has unknown value {ann.get('source')!r}", path) from None
            try:
                pos = PartOfSpeech.parse(_attr(ann, "pos", path))
            except ValueError:
                raise ParseError(f"<annotation> attribute 'pos' has unknown value {ann.get('pos')!r}", path) from None
            sense = (ann.text or "").strip()
            if not sense:
                raise ParseError("<annotation> has no synset id", path)
            anchor = _attr(ann, "anchor", path)
            has_nasari = ann.get("nasariScore") is not None
            if has_nasari != (source is Source.NASARI):
                raise ParseError("<annotation> attribute 'nasariScore' must be present exactly for NASARI", path)
            annotations.append(DisambiguatedInstance(
                gloss_id=gloss_id,
                resource=resource,
                language=language,
                anchor=anchor,
                start=_int_attr(ann, "start", path),
                end=_int_attr(ann, "end", path),
                lemma=lemma_key(anchor),
                pos=pos,
                sense=sense,
                bf_score=_float_attr(ann, "bfScore", path),
                coherence_score=_float_attr(ann, "coherenceScore", path),
                source=source,
                nasari_score=_float_attr(ann, "nasariScore", path) if has_nasari else None,
            ))
        glosses.append(AnnotatedGloss(gloss_id, resource, language, text, tuple(annotations)))
    return version, glosses


def read_corpus_xml(path, version: Optional[Version] = None) -> CorpusRelease:
    """Read one release version, from its directory or from a single XML file.

    The version comes from the files; for an empty directory it is taken from
    ``version`` or from the directory name.
    """
    path = Path(path)
    if path.is_file():
        files = [path]
    elif path.is_dir():
        files = sorted(path.rglob("*.xml"))
    else:
        raise FileNotFoundError(f"no release at {path}")
    entries = []
    for file in files:
        file_version, glosses = _read_file(file)
        if version is None:
            version = file_version
        elif file_version is not version:
            raise ParseError(f"file is {file_version.value}, expected {version.value}", file)
        entries.extend(glosses)
    if version is None:
        by_name = {v.dirname: v for v in Version}
        if path.name not in by_name:
            raise ParseError("cannot tell the release version of an empty directory", path)
        version = by_name[path.name]
    entries.sort(key=lambda e: e.key)
    release = CorpusRelease(version, tuple(entries))
    try:
        validate_release(release)
    except IntegrityError as exc:
        raise ParseError(str(exc), path) from None
    return release


def ingest_raw_glosses(path, synsets: Optional[Mapping] = None) -> list[Gloss]:
    """Read and validate a ``glosses.tsv`` file.

    With ``synsets`` (an inventory or any mapping keyed by synset id), dangling
    definienda are rejected.
    """
    glosses = read_glosses(path)
    if synsets is not None and hasattr(synsets, "synsets"):
        synsets = synsets.synsets
    check_glosses(glosses, synsets)
    return glosses
