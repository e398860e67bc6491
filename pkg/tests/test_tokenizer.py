import pytest
from hypothesis import given, strategies as st

from glosswsd.errors import EmptyInputError
from glosswsd.tokenizer import lemma_key, tokenize


def surfaces(text, lang="en"):
    return [t.surface for t in tokenize(text, lang)]


def test_castling_gloss():
    text = "Interchanging the positions of the king and a rook."
    toks = tokenize(text)
    assert len(toks) == 10
    assert toks[-1].surface == "."
    assert toks[0].lemma == "interchanging"
    assert all(text[t.start:t.end] == t.surface for t in toks)


def test_hyphens_numbers_and_brackets():
    assert surfaces("king-side castle, -3.5% (x) 3.14.") == [
        "king", "-", "side", "castle", ",", "-3.5", "%", "(", "x", ")", "3.14", ".",
    ]


def test_unicode_is_nfc_lowercased():
    toks = tokenize("Ajedrez Ñandú", "es")
    assert [t.lemma for t in toks] == ["ajedrez", "ñandú"]


@pytest.mark.parametrize("text", ["", "   ", "\n\t"])
def test_empty_text_rejected(text):
    with pytest.raises(EmptyInputError):
        tokenize(text)


def test_lemma_key():
    assert lemma_key("Chess_Piece") == "chess piece"
    assert lemma_key("king-side") == "king - side"


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), min_size=1, max_size=60))
def test_offsets_point_into_text(text):
    if not text.strip():
        return
    toks = tokenize(text)
    assert toks
    prev_end = 0
    for t in toks:
        assert t.surface and text[t.start:t.end] == t.surface
        assert t.start >= prev_end
        prev_end = t.end
