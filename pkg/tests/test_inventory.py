import pytest

from glosswsd.errors import IntegrityError, ParseError
from glosswsd.inventory import (Gloss, SemanticNetwork, SenseInventory, SenseRanking, Synset,
                                check_glosses, load_inventory, read_glosses, read_rankings)
from glosswsd.model import PartOfSpeech, Resource

N = PartOfSpeech.NOUN


def syn(sid, *lemmas, pos=N, lang="en"):
    return Synset(sid, pos, tuple((lemma, lang) for lemma in lemmas))


def test_chess_fixture_counts(chess_inventory):
    assert len(chess_inventory) == 12
    assert len(chess_inventory.glosses) == 7
    assert len({g.definiendum for g in chess_inventory.glosses}) == 4
    assert chess_inventory.candidate_senses("rook", "en", N) == ["rook_chess", "rook_bird"]
    assert chess_inventory.most_common_sense("king", "en", N) == "king_monarch"
    assert chess_inventory.candidate_senses("rook", "en", PartOfSpeech.VERB) == []
    assert chess_inventory.candidate_senses("Chess_Piece", "en", N) == ["chess_piece"]
    assert chess_inventory.max_key_tokens == 2


def test_unranked_candidates_follow_file_order():
    inv = SenseInventory([syn("b", "bank"), syn("a", "bank"), syn("c", "bank")],
                         rankings=[SenseRanking("bank", "en", N, ("c",))])
    assert inv.candidate_senses("bank", "en", N) == ["c", "b", "a"]


def test_network_is_symmetric_and_keeps_heaviest():
    net = SemanticNetwork([("a", "b", 0.3), ("b", "a", 0.7)])
    assert net.weight("a", "b") == net.weight("b", "a") == 0.7
    assert list(net.edges()) == [("a", "b", 0.7)]
    assert len(net) == 1
    with pytest.raises(IntegrityError):
        net.add_edge("a", "a", 1.0)
    with pytest.raises(IntegrityError):
        net.add_edge("a", "c", 0.0)


@pytest.mark.parametrize("build", [
    lambda: SenseInventory([]),
    lambda: SenseInventory([syn("a", "x"), syn("a", "y")]),
    lambda: SenseInventory([syn("a", "x")], network=SemanticNetwork([("a", "zz", 1.0)])),
    lambda: SenseInventory([syn("a", "x")], rankings=[SenseRanking("x", "en", N, ("q",))]),
    lambda: SenseInventory([syn("a", "x", pos=PartOfSpeech.VERB)],
                           rankings=[SenseRanking("x", "en", N, ("a",))]),
    lambda: SenseInventory([syn("a", "x")], glosses=[Gloss("g", "zz", Resource.WORDNET, "en", "t")]),
    lambda: Synset("a", N, ()),
    lambda: Synset("a", PartOfSpeech.OTHER, (("x", "en"),)),
])
def test_integrity_violations(build):
    with pytest.raises(IntegrityError):
        build()


def test_duplicate_gloss_key_rejected():
    g = Gloss("g1", "a", Resource.WORDNET, "en", "text")
    with pytest.raises(IntegrityError):
        check_glosses([g, g])
    # same id under another language is a different gloss
    check_glosses([g, Gloss("g1", "a", Resource.WORDNET, "es", "texto")])


def test_parse_errors_name_the_line(tmp_path):
    bad = tmp_path / "glosses.tsv"
    bad.write_text("g1\ta\tWordNet\ten\tfine\ng2\ta\tNotAResource\ten\tbroken\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        read_glosses(bad)
    assert err.value.line == 2
    assert "glosses.tsv" in str(err.value)

    ranks = tmp_path / "rankings.tsv"
    ranks.write_text("rook\ten\tNOUN\n", encoding="utf-8")
    with pytest.raises(ParseError):
        read_rankings(ranks)


def test_optional_files(tmp_path):
    (tmp_path / "synsets.tsv").write_text("a\tNOUN\tx@en\n", encoding="utf-8")
    (tmp_path / "glosses.tsv").write_text("# nothing yet\n\ng\ta\tWikidata\ten\tSome text\n",
                                          encoding="utf-8")
    inv = load_inventory(tmp_path)
    assert len(inv.network) == 0
    assert inv.candidate_senses("x", "en", N) == ["a"]
    assert inv.glosses[0].text == "Some text"


def test_missing_required_file(tmp_path):
    (tmp_path / "synsets.tsv").write_text("a\tNOUN\tx@en\n", encoding="utf-8")
    with pytest.raises(FileNotFoundError):
        load_inventory(tmp_path)
