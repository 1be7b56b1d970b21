from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from homtori.repvariety.presentation import PresentationError, Word, parse_presentation, t3qq, t4qq

T3_Q3 = "<x,u,v,a,b | [u,x], [v,x], [a,x], [b,x], a^3 x, b^-3 x, [u,v] a b>"


def test_family_builder_prints_expected_text():
    assert str(t3qq(3)) == T3_Q3
    assert parse_presentation(T3_Q3) == t3qq(3)
    assert t3qq(3).q == 3


@pytest.mark.parametrize("q", [1, 3, 5, 9])
def test_round_trip(q):
    for pres in (t3qq(q), t4qq(q)):
        again = parse_presentation(str(pres))
        assert again == pres
        assert again.words == pres.words


def test_t4_adds_central_y():
    pres = t4qq(5)
    assert pres.generators == ("x", "y", "u", "v", "a", "b")
    assert "[y,x]" in str(pres) and "[b,y]" in str(pres)
    assert len(pres.relators) == 12


def test_free_group():
    pres = parse_presentation("<a | >")
    assert pres.generators == ("a",) and pres.relators == ()


def test_undeclared_generator():
    with pytest.raises(PresentationError, match="undeclared generator") as info:
        parse_presentation("<a | b>")
    assert (info.value.line, info.value.col) == (1, 6)


@pytest.mark.parametrize("text", ["<a | a^>", "<a, | a>", "<a | [a a]>", "<a | a", "<a | a> x", "<a | a$>"])
def test_syntax_errors_have_positions(text):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert info.value.line == 1 and info.value.col is not None


def test_error_position_on_later_line():
    with pytest.raises(PresentationError) as info:
        parse_presentation("<a, b |\n  a b,\n  a ^ c>")
    assert info.value.line == 3


@pytest.mark.parametrize("q", [0, 2, -3])
def test_family_rejects_bad_q(q):
    with pytest.raises(ValueError):
        t3qq(q)
    with pytest.raises(ValueError):
        t4qq(q)


def test_word_reduction_and_commutators():
    pres = parse_presentation("<x, y | >")
    assert pres.word("x x^-1 y^2 y") == Word(((1, 3),))
    assert pres.word("[x,y]") == Word(((0, 1), (1, 1), (0, -1), (1, -1)))
    assert pres.word("x^0") == Word()
    assert pres.word("[x,x]") == Word()


letters = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=12)


@given(letters, letters)
def test_word_group_laws(w1, w2):
    a, b = Word(tuple(w1)), Word(tuple(w2))
    assert (a * a.inverse()) == Word()
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert all(e != 0 for _, e in a.letters)
    assert all(g1 != g2 for (g1, _), (g2, _) in zip(a.letters, a.letters[1:]))
    assert (a * b).exponent_sums(3) == [x + y for x, y in zip(a.exponent_sums(3), b.exponent_sums(3))]
