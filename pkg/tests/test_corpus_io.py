import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from glosswsd.corpus_io import (Version, build_release, format_score, ingest_raw_glosses,
                                read_corpus_xml, release_path, write_corpus_xml)
from glosswsd.disambiguate import DisambiguatedInstance
from glosswsd.errors import IntegrityError, ParseError
from glosswsd.inventory import Gloss
from glosswsd.model import PartOfSpeech, Resource, Source

from conftest import CHESS

TEXT = "Interchanging the positions of the king and a rook."
GLOSS = Gloss("00351000n", "castling", Resource.WORDNET, "en", TEXT)


def ann(source=Source.BABELFY, nasari=None, start=35, end=39, sense="king_chess"):
    return DisambiguatedInstance("00351000n", Resource.WORDNET, "en", TEXT[start:end], start, end,
                                 "king", PartOfSpeech.NOUN, sense, 0.67444, 0.125, source, nasari)


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*.xml"))}


@pytest.mark.parametrize("value, text", [
    (0.5, "0.5000"), (1.0, "1.0000"), (0.0, "0.0000"),
    (0.12345, "0.1234"), (0.12355, "0.1236"), (2 / 3, "0.6667"), (0.125, "0.1250"),
])
def test_format_score(value, text):
    assert format_score(value) == text


def test_layout(tmp_path):
    release = build_release(Version.COMPLETE, [GLOSS], [ann(Source.MCS)])
    [path] = write_corpus_xml(release, tmp_path)
    assert path == release_path(tmp_path, Version.COMPLETE, Resource.WORDNET, "en")
    assert path.relative_to(tmp_path).as_posix() == "complete/WordNet/WordNet.en.xml"
    assert path.read_text(encoding="utf-8") == (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<corpus version="COMPLETE" resource="WordNet" language="en">\n'
        f'  <definition id="00351000n">{TEXT}\n'
        '    <annotation source="MCS" anchor="king" start="35" end="39" pos="NOUN" '
        'bfScore="0.6744" coherenceScore="0.1250">king_chess</annotation>\n'
        '  </definition>\n'
        '</corpus>\n'
    )


def test_source_rules():
    with pytest.raises(IntegrityError):
        build_release(Version.COMPLETE, [GLOSS], [ann(Source.NASARI, 0.9)])
    with pytest.raises(IntegrityError):
        build_release(Version.HIGH_PRECISION, [GLOSS], [ann(Source.MCS)])
    with pytest.raises(IntegrityError):
        build_release(Version.HIGH_PRECISION, [GLOSS], [ann(Source.NASARI)])  # score missing
    with pytest.raises(IntegrityError):
        build_release(Version.COMPLETE, [GLOSS], [replace(ann(), start=0, end=4)])  # "Inte" != "king"
    with pytest.raises(IntegrityError):
        build_release(Version.COMPLETE, [GLOSS], [ann(nasari=0.8)])


def test_unannotated_and_tricky_text_round_trip(tmp_path):
    glosses = [
        GLOSS,
        Gloss("a&b", "x", Resource.WIKTIONARY, "en", 'Uses <tags> & "quotes"\n    '),
        Gloss("tail", "x", Resource.WIKTIONARY, "en", "  padded text  "),
    ]
    anns = [ann(Source.NASARI, 0.897244494008859), ann(start=46, end=50, sense="rook_chess")]
    release = build_release(Version.HIGH_PRECISION, glosses, anns)
    write_corpus_xml(release, tmp_path / "a")
    back = read_corpus_xml(tmp_path / "a" / "high_precision")
    assert [g.text for g in back.glosses] == [g.text for g in release.glosses]
    write_corpus_xml(back, tmp_path / "b")
    assert tree_bytes(tmp_path / "a") == tree_bytes(tmp_path / "b")


def write(tmp_path, body):
    path = tmp_path / "f.xml"
    path.write_text(
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<corpus version="COMPLETE" resource="WordNet" language="en">\n'
        f'  <definition id="00351000n">{TEXT}\n    {body}\n  </definition>\n</corpus>\n',
        encoding="utf-8")
    return path


GOOD = 'source="MCS" anchor="king" start="35" end="39" pos="NOUN" bfScore="0.5" coherenceScore="0.1"'


@pytest.mark.parametrize("attrs, needle", [
    (GOOD.replace('anchor="king" ', ""), "anchor"),
    (GOOD.replace("MCS", "GUESS"), "source"),
    (GOOD + ' extra="1"', "extra"),
    (GOOD.replace('bfScore="0.5"', 'bfScore="high"'), "bfScore"),
    (GOOD.replace('bfScore="0.5"', 'bfScore="nan"'), "bfScore"),
    (GOOD.replace("MCS", "NASARI"), "nasariScore"),
    (GOOD.replace('start="35"', 'start="3"'), "anchor"),
])
def test_malformed_annotations(tmp_path, attrs, needle):
    path = write(tmp_path, f"<annotation {attrs}>king_chess</annotation>")
    with pytest.raises(ParseError) as err:
        read_corpus_xml(path)
    assert needle in str(err.value)


def test_reads_the_valid_one(tmp_path):
    release = read_corpus_xml(write(tmp_path, f"<annotation {GOOD}>king_chess</annotation>"))
    [a] = release.annotations()
    assert (a.sense, a.bf_score, a.source, a.lemma) == ("king_chess", 0.5, Source.MCS, "king")
    assert release.glosses[0].text == TEXT


def test_broken_xml_and_version_mismatch(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<corpus", encoding="utf-8")
    with pytest.raises(ParseError):
        read_corpus_xml(bad)
    path = write(tmp_path, f"<annotation {GOOD}>king_chess</annotation>")
    with pytest.raises(ParseError):
        read_corpus_xml(path, Version.HIGH_PRECISION)
    with pytest.raises(FileNotFoundError):
        read_corpus_xml(tmp_path / "missing")


def test_ingest_raw_glosses(chess_inventory):
    glosses = ingest_raw_glosses(CHESS / "glosses.tsv", chess_inventory)
    assert len(glosses) == 7
    assert len({g.definiendum for g in glosses}) == 4
    assert {g.resource for g in glosses} == set(Resource)
    with pytest.raises(IntegrityError):
        ingest_raw_glosses(CHESS / "glosses.tsv", {"castling": None})


scores = st.floats(0, 1, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, len(TEXT) - 1), st.integers(1, 12), scores, scores,
                          st.sampled_from([Source.BABELFY, Source.MCS])), max_size=6))
def test_round_trip_property(tmp_path_factory, specs):
    anns = []
    for start, length, bf, coh, source in specs:
        end = min(len(TEXT), start + length)
        anns.append(DisambiguatedInstance("00351000n", Resource.WORDNET, "en", TEXT[start:end],
                                          start, end, "x", PartOfSpeech.NOUN, "s1", bf, coh, source))
    release = build_release(Version.COMPLETE, [GLOSS], anns)
    root = tmp_path_factory.mktemp("rt")
    write_corpus_xml(release, root / "a")
    back = read_corpus_xml(root / "a" / "complete")
    write_corpus_xml(back, root / "b")
    assert tree_bytes(root / "a") == tree_bytes(root / "b")
    for orig, got in zip(release.annotations(), back.annotations()):
        assert math.isclose(orig.bf_score, got.bf_score, abs_tol=5e-5)
        assert (orig.start, orig.end, orig.anchor) == (got.start, got.end, got.anchor)
